import { runScript } from "./common.js";

runScript("mean-vs-truth", process.argv.slice(2));
