import { runScript } from "./common.js";

runScript("wavelet-modes", process.argv.slice(2));
