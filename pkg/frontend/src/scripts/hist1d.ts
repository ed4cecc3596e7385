import { runScript } from "./common.js";

runScript("hist1d", process.argv.slice(2));
