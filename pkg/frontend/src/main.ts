import { ApiClient } from "./api";
import { TypeaheadController } from "./controller";
import { renderView } from "./render";
import { SearchMode } from "./types";

// ?service=http://host:port overrides the completion service base URL
const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("service") ?? "");

const input = document.getElementById("query") as HTMLInputElement;

const controller = new TypeaheadController({
  transport: api.transport(),
  onRender: (state) => renderView(state, pick),
});

function pick(mode: SearchMode, index: number): void {
  const panel = mode === "prefix" ? controller.viewState.prefix
                                  : controller.viewState.conjunctive;
  const row = panel.rows[index];
  if (row) {
    input.value = controller.onSelect(row);
    input.focus();
  }
}

input.addEventListener("input", () => controller.onInput(input.value));
input.addEventListener("keydown", (ev) => {
  if (ev.key === "ArrowDown" || ev.key === "ArrowUp" || ev.key === "Enter") {
    ev.preventDefault();
    const selected = controller.onKeyDown(ev.key);
    if (selected !== null) {
      input.value = selected;
    }
  }
});

api.healthz().then((ok) => {
  const banner = document.getElementById("error-banner")!;
  if (!ok) {
    banner.textContent = "completion service unreachable";
    banner.hidden = false;
  }
});
