import { spawnSync } from "node:child_process";
import * as path from "node:path";

// Compares the primary library's outputs against the committed fixture file
// by invoking its CLI; exits nonzero on any mismatch beyond tolerance.
const repoRoot = path.join(__dirname, "..", "..", "..");
const fixtureFile = process.argv[2] ?? path.join(repoRoot, "fixtures", "fixtures.json");
const result = spawnSync("python3", ["-m", "dunklosc.cli", "fixtures", "--file", fixtureFile], {
  stdio: "inherit",
  cwd: repoRoot,
});
process.exit(result.status ?? 1);
