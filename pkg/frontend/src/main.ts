import { ApiClient, ServiceError, Superseded } from "./api.js";
import { debounce } from "./debounce.js";
import {
  applyFilter,
  panelsFrom,
  renderCategoryOptions,
  renderError,
  renderInfobox,
  renderPanels,
} from "./render.js";
import type { PanelView } from "./types.js";

const api = new ApiClient();

const searchInput = document.getElementById("search") as HTMLInputElement;
const suggestionList = document.getElementById("suggestions") as HTMLElement;
const infobox = document.getElementById("infobox") as HTMLElement;
const panelGrid = document.getElementById("panels") as HTMLElement;
const categorySelect = document.getElementById("category-filter") as HTMLSelectElement;
const languageToggle = document.getElementById("language") as HTMLSelectElement;
const errorArea = document.getElementById("errors") as HTMLElement;

let currentPanels: PanelView[] = [];
let currentQuery: string | null = null;

function language(): string {
  return languageToggle.value;
}

async function runExplore(term: string): Promise<void> {
  suggestionList.replaceChildren();
  errorArea.replaceChildren();
  try {
    const response = await api.explore(term, language());
    currentQuery = response.concept.title;
    currentPanels = panelsFrom(response);
    renderInfobox(infobox, response);
    renderPanels(panelGrid, currentPanels);
    renderCategoryOptions(categorySelect, response.categories ?? []);
  } catch (err) {
    if (err instanceof Superseded) {
      return; // a newer query owns the screen
    }
    const message = err instanceof ServiceError ? `${err.code}: ${err.message}` : String(err);
    renderError(errorArea, message);
  }
}

const suggest = debounce(async (term: string) => {
  try {
    const titles = await api.suggest(term, language());
    suggestionList.replaceChildren();
    for (const title of titles) {
      const item = document.createElement("li");
      item.textContent = title;
      item.addEventListener("click", () => {
        searchInput.value = title;
        void runExplore(title);
      });
      suggestionList.appendChild(item);
    }
  } catch (err) {
    if (!(err instanceof Superseded)) {
      suggestionList.replaceChildren();
    }
  }
});

searchInput.addEventListener("input", () => {
  const term = searchInput.value.trim();
  if (term.length >= 2) {
    suggest(term);
  } else {
    suggest.cancel();
    suggestionList.replaceChildren();
  }
});

searchInput.addEventListener("keydown", (event) => {
  if (event.key === "Enter" && searchInput.value.trim()) {
    suggest.cancel();
    void runExplore(searchInput.value.trim());
  }
});

categorySelect.addEventListener("change", () => {
  applyFilter(panelGrid, currentPanels, categorySelect.value || null);
});

languageToggle.addEventListener("change", () => {
  if (currentQuery !== null) {
    void runExplore(currentQuery);
  }
});
