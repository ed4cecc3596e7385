import { runScript } from "./common.js";

runScript("acf", process.argv.slice(2));
