import { runScript } from "./common.js";

runScript("hist2d-analytic", process.argv.slice(2));
