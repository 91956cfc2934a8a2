import { Debouncer } from "./debounce";
import { PanelState, ResultRow, SearchMode, Transport, ViewState } from "./types";

export interface ControllerOptions {
  transport: Transport;
  onRender: (state: ViewState) => void;
  k?: number;
  debounceMs?: number;
}

function emptyPanel(): PanelState {
  return { rows: [], latencyUs: null, loading: false };
}

/**
 * Drives the dual-panel typeahead.
 *
 * Every input change schedules (after a debounce) one request pair with the
 * same query and k, one per search mode. Request pairs carry a sequence
 * number; a response is applied only when its sequence number is still the
 * latest issued, so a slow earlier response can never overwrite a newer
 * one. Failed requests surface an error banner and leave the last good
 * panel contents in place.
 */
export class TypeaheadController {
  readonly k: number;
  private readonly transport: Transport;
  private readonly onRender: (state: ViewState) => void;
  private readonly debouncer: Debouncer;
  private seq = 0;
  private state: ViewState;
  /** resolves when every request issued so far has settled; test hook */
  private inflight: Promise<unknown> = Promise.resolve();

  constructor(opts: ControllerOptions) {
    this.transport = opts.transport;
    this.onRender = opts.onRender;
    this.k = opts.k ?? 10;
    this.debouncer = new Debouncer(opts.debounceMs ?? 100);
    this.state = {
      query: "",
      prefix: emptyPanel(),
      conjunctive: emptyPanel(),
      sharedDocids: new Set(),
      error: null,
      highlightIndex: -1,
    };
    this.render();
  }

  get viewState(): ViewState {
    return this.state;
  }

  onInput(text: string): void {
    this.state.query = text;
    this.state.highlightIndex = -1;
    this.seq += 1; // anything already in flight is now stale
    if (text.trim() === "") {
      this.debouncer.cancel();
      this.state.prefix = emptyPanel();
      this.state.conjunctive = emptyPanel();
      this.state.sharedDocids = new Set();
      this.state.error = null;
      this.render();
      return;
    }
    this.state.prefix.loading = true;
    this.state.conjunctive.loading = true;
    this.render();
    this.debouncer.schedule(() => this.issuePair(text));
  }

  /** Fills the input with a chosen completion and re-queries immediately. */
  onSelect(row: ResultRow): string {
    this.state.query = row.completion;
    this.state.highlightIndex = -1;
    this.seq += 1;
    this.debouncer.cancel();
    this.state.prefix.loading = true;
    this.state.conjunctive.loading = true;
    this.render();
    this.issuePair(row.completion);
    return row.completion;
  }

  /**
   * Keyboard navigation over the conjunctive panel: ArrowUp/ArrowDown move
   * the highlight (with wrap-around), Enter selects the highlighted row and
   * returns its completion, anything else is ignored.
   */
  onKeyDown(key: string): string | null {
    const rows = this.state.conjunctive.rows;
    if (key === "ArrowDown" && rows.length > 0) {
      this.state.highlightIndex = (this.state.highlightIndex + 1) % rows.length;
      this.render();
      return null;
    }
    if (key === "ArrowUp" && rows.length > 0) {
      this.state.highlightIndex =
        (this.state.highlightIndex - 1 + rows.length) % rows.length;
      this.render();
      return null;
    }
    if (key === "Enter" && this.state.highlightIndex >= 0 &&
        this.state.highlightIndex < rows.length) {
      return this.onSelect(rows[this.state.highlightIndex]);
    }
    return null;
  }

  /** Waits until the debounce window and all issued requests settle. */
  async settle(): Promise<void> {
    while (this.debouncer.pending) {
      await new Promise((r) => setTimeout(r, 5));
    }
    await this.inflight;
    await this.inflight; // second round for requests chained by the first
  }

  private issuePair(query: string): void {
    const issued = this.seq;
    const pair = Promise.all([
      this.issueOne(query, "prefix", issued),
      this.issueOne(query, "conjunctive", issued),
    ]);
    this.inflight = this.inflight.then(() => pair);
  }

  private async issueOne(query: string, mode: SearchMode, issued: number): Promise<void> {
    try {
      const response = await this.transport(query, this.k, mode);
      if (issued !== this.seq) {
        return; // stale: a newer input has been issued since
      }
      const panel = this.state[mode];
      panel.rows = response.results;
      panel.latencyUs = response.timings_us.total ?? null;
      panel.loading = false;
      this.state.error = null;
    } catch (err) {
      if (issued !== this.seq) {
        return;
      }
      this.state[mode].loading = false;
      this.state.error = err instanceof Error ? err.message : String(err);
    }
    this.recomputeShared();
    this.render();
  }

  private recomputeShared(): void {
    const prefixIds = new Set(this.state.prefix.rows.map((r) => r.docid));
    this.state.sharedDocids = new Set(
      this.state.conjunctive.rows.map((r) => r.docid).filter((d) => prefixIds.has(d)));
  }

  private render(): void {
    this.onRender(this.state);
  }
}
