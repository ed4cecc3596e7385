import { runScript } from "./common.js";

runScript("accept-curve", process.argv.slice(2));
