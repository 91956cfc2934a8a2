import { CompleteResponse, SearchMode, Transport } from "./types";

/** HTTP client for the completion service; the base URL is configurable
 * (default: same origin). */
export class ApiClient {
  constructor(private baseUrl: string = "") {}

  transport(): Transport {
    return (query, k, mode) => this.complete(query, k, mode);
  }

  async complete(query: string, k: number, mode: SearchMode): Promise<CompleteResponse> {
    const params = new URLSearchParams({ q: query, k: String(k), mode });
    const res = await fetch(`${this.baseUrl}/complete?${params}`);
    if (!res.ok) {
      throw new Error(`completion request failed: HTTP ${res.status}`);
    }
    return (await res.json()) as CompleteResponse;
  }

  async healthz(): Promise<boolean> {
    try {
      const res = await fetch(`${this.baseUrl}/healthz`);
      return res.ok;
    } catch {
      return false;
    }
  }

  async stats(): Promise<Record<string, unknown>> {
    const res = await fetch(`${this.baseUrl}/stats`);
    if (!res.ok) {
      throw new Error(`stats request failed: HTTP ${res.status}`);
    }
    return (await res.json()) as Record<string, unknown>;
  }
}
