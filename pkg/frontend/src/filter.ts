import type { PanelView } from "./types.js";

/**
 * Panels whose assigned category equals `category`, in their original
 * rank order.  A null category means "no filter" and returns all panels.
 */
export function filterByCategory(
  panels: readonly PanelView[],
  category: string | null,
): PanelView[] {
  if (category === null) {
    return [...panels];
  }
  return panels.filter((panel) => panel.category === category);
}
