export interface ResultRow {
  rank: number;
  docid: number;
  score: number;
  completion: string;
}

export interface CompleteResponse {
  query: string;
  parsed: { prefix_ids: number[]; suffix: string };
  results: ResultRow[];
  timings_us: Record<string, number>;
}

export type SearchMode = "prefix" | "conjunctive";

/** Issues one /complete request; rejects on network failure or non-2xx. */
export type Transport = (query: string, k: number, mode: SearchMode) => Promise<CompleteResponse>;

export interface PanelState {
  rows: ResultRow[];
  /** timings_us.total of the request these rows came from. */
  latencyUs: number | null;
  loading: boolean;
}

export interface ViewState {
  query: string;
  prefix: PanelState;
  conjunctive: PanelState;
  /** docids present in both panels, for the shared-result markers. */
  sharedDocids: Set<number>;
  error: string | null;
  /** keyboard highlight inside the conjunctive panel, or -1. */
  highlightIndex: number;
}
