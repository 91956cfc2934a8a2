import { SearchMode } from "./types";

export interface Segment {
  text: string;
  hit: boolean;
}

function splitTokens(query: string): { tokens: string[]; suffix: string } {
  const tokens = query.split(/[ \t\n\r\f\v]+/).filter((t) => t.length > 0);
  if (tokens.length === 0 || /[ \t\n\r\f\v]$/.test(query)) {
    return { tokens, suffix: "" };
  }
  return { tokens: tokens.slice(0, -1), suffix: tokens[tokens.length - 1] };
}

function termSegments(term: string, hitLen: number): Segment[] {
  const out: Segment[] = [];
  if (hitLen > 0) {
    out.push({ text: term.slice(0, hitLen), hit: true });
  }
  if (hitLen < term.length) {
    out.push({ text: term.slice(hitLen), hit: false });
  }
  return out;
}

/**
 * Marks, term by term, exactly the characters the user has typed.
 *
 * Prefix mode matches positionally: whole query terms cover their
 * completion terms in full, the suffix covers the first characters of the
 * next term. Conjunctive mode is order-free: each query term highlights the
 * first unused completion term it equals, and the suffix the first unused
 * term it prefixes.
 */
export function highlightCompletion(query: string, completion: string,
                                    mode: SearchMode): Segment[] {
  const { tokens, suffix } = splitTokens(query);
  const terms = completion.split(" ");
  const hitLens = new Array<number>(terms.length).fill(0);

  if (mode === "prefix") {
    for (let i = 0; i < tokens.length && i < terms.length; i++) {
      if (terms[i] === tokens[i]) {
        hitLens[i] = tokens[i].length;
      }
    }
    const at = tokens.length;
    if (suffix && at < terms.length && terms[at].startsWith(suffix)) {
      hitLens[at] = suffix.length;
    }
  } else {
    const used = new Array<boolean>(terms.length).fill(false);
    for (const token of tokens) {
      for (let i = 0; i < terms.length; i++) {
        if (!used[i] && terms[i] === token) {
          used[i] = true;
          hitLens[i] = token.length;
          break;
        }
      }
    }
    if (suffix) {
      for (let i = 0; i < terms.length; i++) {
        if (!used[i] && terms[i].startsWith(suffix)) {
          used[i] = true;
          hitLens[i] = suffix.length;
          break;
        }
      }
    }
  }

  const segments: Segment[] = [];
  terms.forEach((term, i) => {
    if (i > 0) {
      segments.push({ text: " ", hit: false });
    }
    segments.push(...termSegments(term, hitLens[i]));
  });
  return segments;
}
