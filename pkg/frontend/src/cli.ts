#!/usr/bin/env node
/** `catlgt-render render <figure> --data DIR --out FILE` */

import { writeFileSync, mkdirSync } from "fs";
import { dirname } from "path";

import { FIGURES, render } from "./figures.js";

export function main(argv: string[]): number {
  const args = [...argv];
  const command = args.shift();
  if (command === "list") {
    process.stdout.write(Object.keys(FIGURES).sort().join("\n") + "\n");
    return 0;
  }
  if (command !== "render") {
    process.stderr.write(
      "usage: catlgt-render render <figure> --data DIR --out FILE | catlgt-render list\n",
    );
    return 2;
  }
  const figure = args.shift();
  let dataDir = "";
  let outFile = "";
  for (let i = 0; i < args.length; i++) {
    if (args[i] === "--data") dataDir = args[++i];
    else if (args[i] === "--out") outFile = args[++i];
  }
  if (!figure || !dataDir || !outFile) {
    process.stderr.write("render needs <figure> --data DIR --out FILE\n");
    return 2;
  }
  try {
    const svg = render(figure, dataDir);
    mkdirSync(dirname(outFile), { recursive: true });
    writeFileSync(outFile, svg, "utf-8");
    process.stdout.write(`${outFile}\n`);
    return 0;
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
