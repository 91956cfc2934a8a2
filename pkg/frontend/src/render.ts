import { highlightCompletion } from "./highlight";
import { SearchMode, ViewState } from "./types";

function renderPanel(root: HTMLElement, state: ViewState, mode: SearchMode,
                     onPick: (index: number) => void): void {
  const panel = mode === "prefix" ? state.prefix : state.conjunctive;
  const latency = root.querySelector(".latency") as HTMLElement;
  latency.textContent = panel.latencyUs === null ? "" : `${panel.latencyUs} µs`;
  const list = root.querySelector(".results") as HTMLElement;
  list.innerHTML = "";
  panel.rows.forEach((row, index) => {
    const li = document.createElement("li");
    li.classList.toggle("shared", state.sharedDocids.has(row.docid));
    li.classList.toggle("highlighted",
      mode === "conjunctive" && index === state.highlightIndex);
    const text = document.createElement("span");
    text.className = "completion";
    for (const seg of highlightCompletion(state.query, row.completion, mode)) {
      if (seg.hit) {
        const b = document.createElement("b");
        b.textContent = seg.text;
        text.appendChild(b);
      } else {
        text.appendChild(document.createTextNode(seg.text));
      }
    }
    const score = document.createElement("span");
    score.className = "score";
    score.textContent = String(row.score);
    li.appendChild(text);
    li.appendChild(score);
    li.addEventListener("mousedown", (ev) => {
      ev.preventDefault();
      onPick(index);
    });
    list.appendChild(li);
  });
  root.classList.toggle("loading", panel.loading);
  root.classList.toggle("empty", panel.rows.length === 0);
}

export function renderView(state: ViewState,
                           onPick: (mode: SearchMode, index: number) => void): void {
  const banner = document.getElementById("error-banner")!;
  banner.textContent = state.error ?? "";
  banner.hidden = state.error === null;
  renderPanel(document.getElementById("panel-prefix")!, state, "prefix",
              (i) => onPick("prefix", i));
  renderPanel(document.getElementById("panel-conjunctive")!, state, "conjunctive",
              (i) => onPick("conjunctive", i));
  const shared = document.getElementById("shared-count")!;
  shared.textContent = state.sharedDocids.size > 0
    ? `${state.sharedDocids.size} result(s) in common`
    : "";
}
