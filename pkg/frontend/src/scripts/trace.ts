import { runScript } from "./common.js";

runScript("trace", process.argv.slice(2));
