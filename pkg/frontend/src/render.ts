import { colorForRelatedness, cssColor } from "./color.js";
import { filterByCategory } from "./filter.js";
import type { CategoryJson, ExploreResponse, PanelView } from "./types.js";

export const NO_SNIPPET_PLACEHOLDER = "no description available";

/** Panels in response order; rank is never recomputed client-side. */
export function panelsFrom(response: ExploreResponse): PanelView[] {
  return response.entities.map((entity) => {
    const relatedness = entity.sr ?? 0;
    return {
      title: entity.title,
      url: entity.url,
      thumbnail: entity.thumbnail,
      relatedness,
      markerColor: colorForRelatedness(relatedness),
      category: entity.category,
      snippets: entity.snippets ?? [],
    };
  });
}

export function renderInfobox(container: HTMLElement, response: ExploreResponse): void {
  container.replaceChildren();
  const { concept } = response;
  if (concept.thumbnail) {
    const img = document.createElement("img");
    img.className = "infobox-thumb";
    img.src = concept.thumbnail;
    img.alt = concept.title;
    container.appendChild(img);
  }
  const link = document.createElement("a");
  link.className = "infobox-link";
  link.href = concept.url;
  link.target = "_blank";
  link.textContent = concept.title;
  container.appendChild(link);
  const description = document.createElement("p");
  description.className = "infobox-description";
  description.textContent = concept.description ?? "";
  container.appendChild(description);
}

export function renderPanels(container: HTMLElement, panels: readonly PanelView[]): void {
  container.replaceChildren();
  for (const panel of panels) {
    const card = document.createElement("div");
    card.className = "panel";
    card.dataset.title = panel.title;
    if (panel.category) {
      card.dataset.category = panel.category;
    }

    const marker = document.createElement("div");
    marker.className = "panel-marker";
    marker.style.backgroundColor = cssColor(panel.markerColor);
    card.appendChild(marker);

    if (panel.thumbnail) {
      const img = document.createElement("img");
      img.className = "panel-thumb";
      img.src = panel.thumbnail;
      img.alt = panel.title;
      card.appendChild(img);
    }

    const link = document.createElement("a");
    link.className = "panel-link";
    link.href = panel.url;
    link.target = "_blank";
    link.textContent = panel.title;
    card.appendChild(link);

    card.addEventListener("mouseenter", (event) => {
      showPopup(panel, event.currentTarget as HTMLElement);
    });
    card.addEventListener("mouseleave", hidePopup);
    container.appendChild(card);
  }
}

export function renderCategoryOptions(
  select: HTMLSelectElement,
  categories: readonly CategoryJson[],
): void {
  select.replaceChildren();
  const all = document.createElement("option");
  all.value = "";
  all.textContent = "all categories";
  select.appendChild(all);
  // category_index order is preserved as given by the service
  for (const category of categories) {
    const option = document.createElement("option");
    option.value = category.name;
    option.textContent = `${category.name} (${category.size})`;
    select.appendChild(option);
  }
}

export function applyFilter(
  container: HTMLElement,
  panels: readonly PanelView[],
  category: string | null,
): void {
  renderPanels(container, filterByCategory(panels, category));
}

export function showPopup(panel: PanelView, anchor: HTMLElement): void {
  hidePopup();
  const popup = document.createElement("div");
  popup.className = "popup";
  popup.id = "popup";

  const heading = document.createElement("div");
  heading.className = "popup-title";
  heading.textContent = `${panel.title} — sr ${panel.relatedness.toFixed(4)}`;
  popup.appendChild(heading);

  if (panel.snippets.length === 0) {
    const empty = document.createElement("p");
    empty.className = "popup-empty";
    empty.textContent = NO_SNIPPET_PLACEHOLDER;
    popup.appendChild(empty);
  } else {
    for (const snippet of panel.snippets) {
      const entry = document.createElement("p");
      entry.className = "popup-snippet";
      entry.textContent = snippet.text + " ";
      const source = document.createElement("a");
      source.href = articleUrlLike(panel.url, snippet.source);
      source.target = "_blank";
      source.textContent = `[${snippet.source}]`;
      entry.appendChild(source);
      popup.appendChild(entry);
    }
  }
  anchor.appendChild(popup);
}

export function hidePopup(): void {
  document.getElementById("popup")?.remove();
}

function articleUrlLike(siblingUrl: string, title: string): string {
  const base = siblingUrl.slice(0, siblingUrl.lastIndexOf("/") + 1);
  return base + encodeURIComponent(title.replace(/ /g, "_"));
}

export function renderError(container: HTMLElement, message: string): void {
  container.replaceChildren();
  const box = document.createElement("div");
  box.className = "error-box";
  box.textContent = message;
  const dismiss = document.createElement("button");
  dismiss.textContent = "dismiss";
  dismiss.addEventListener("click", () => box.remove());
  box.appendChild(dismiss);
  container.appendChild(box);
}
