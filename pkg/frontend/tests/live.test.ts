// End-to-end suite against a live completion service on the canonical
// nine-completion fixture. Gated behind QAC_LIVE=1 (run via `npm run
// test:live`); it builds a fixture index and spawns the Python service.

import { ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { TypeaheadController } from "../src/controller";

const LIVE = process.env.QAC_LIVE === "1";
const PORT = 18342 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

const FIXTURE = [
  ["bmw i3 sedan", 90], ["bmw i3 sportback", 80], ["audi q8 sedan", 70],
  ["bmw i3 sport", 60], ["bmw x1", 50], ["audi a3 sport", 40],
  ["bmw i8 sport", 30], ["bmw", 20], ["audi", 10],
] as const;

function run(args: string[]): Promise<number> {
  return new Promise((resolve, reject) => {
    const p = spawn("python3", ["-m", "qac.cli", ...args], { stdio: "inherit" });
    p.on("exit", (code) => resolve(code ?? 1));
    p.on("error", reject);
  });
}

async function waitHealthy(api: ApiClient, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (await api.healthz()) {
      return;
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("service did not become healthy in time");
}

describe.runIf(LIVE)("live service", () => {
  let server: ChildProcess;
  const api = new ApiClient(BASE);

  beforeAll(async () => {
    const dir = mkdtempSync(join(tmpdir(), "qac-live-"));
    const log = join(dir, "fixture.tsv");
    writeFileSync(log, FIXTURE.map(([t, s]) => `${t}\t${s}`).join("\n") + "\n");
    const index = join(dir, "fixture.idx");
    expect(await run(["build", log, index, "--scores"])).toBe(0);
    server = spawn("python3",
      ["-m", "qac.cli", "serve", index, "--port", String(PORT)],
      { stdio: "ignore" });
    await waitHealthy(api, 20_000);
  }, 40_000);

  afterAll(() => {
    server?.kill();
  });

  it("reports fixture stats", async () => {
    const stats = await api.stats();
    expect(stats.completions).toBe(9);
    expect(stats.unique_terms).toBe(10);
  });

  function makeController() {
    return new TypeaheadController({
      transport: api.transport(),
      onRender: () => undefined,
      debounceMs: 60,
    });
  }

  it("typing 'bmw i3 s' renders 3 conjunctive results", async () => {
    const c = makeController();
    for (const partial of ["b", "bm", "bmw i3 s"]) {
      c.onInput(partial);
    }
    await c.settle();
    const conj = c.viewState.conjunctive.rows;
    expect(conj.length).toBe(3);
    expect(conj.map((r) => r.docid)).toEqual([1, 2, 4]);
    expect(conj[0].completion).toBe("bmw i3 sedan");
    expect(c.viewState.prefix.rows.map((r) => r.docid)).toEqual([1, 2, 4]);
    expect(c.viewState.conjunctive.latencyUs).not.toBeNull();
  });

  it("typing 'i3' renders an empty prefix panel and a non-empty conjunctive panel", async () => {
    const c = makeController();
    c.onInput("i3");
    await c.settle();
    expect(c.viewState.prefix.rows).toEqual([]);
    expect(c.viewState.conjunctive.rows.length).toBeGreaterThan(0);
    expect(c.viewState.conjunctive.rows.map((r) => r.docid)).toEqual([1, 2, 4]);
    expect(c.viewState.error).toBeNull();
  });

  it("clearing the input empties both panels", async () => {
    const c = makeController();
    c.onInput("bmw");
    await c.settle();
    c.onInput("");
    await c.settle();
    expect(c.viewState.prefix.rows).toEqual([]);
    expect(c.viewState.conjunctive.rows).toEqual([]);
  });

  it("selecting a suggestion makes it its own top-1", async () => {
    const c = makeController();
    c.onInput("bmw i3 s");
    await c.settle();
    const text = c.onSelect(c.viewState.conjunctive.rows[0]);
    expect(text).toBe("bmw i3 sedan");
    await c.settle();
    expect(c.viewState.conjunctive.rows[0].completion).toBe("bmw i3 sedan");
    expect(c.viewState.conjunctive.rows[0].docid).toBe(1);
  });
});
