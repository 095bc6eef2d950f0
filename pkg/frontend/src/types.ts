// Shapes of the JSON payloads served by /api/explore and /api/suggest.

export interface SnippetJson {
  text: string;
  track: "article_sentence" | "search_snippet";
  source: string;
}

export interface ConceptJson {
  title: string;
  url: string;
  thumbnail?: string;
  description?: string;
}

export interface EntityJson {
  title: string;
  url: string;
  sr?: number;
  distance?: number;
  category?: string;
  thumbnail?: string;
  snippets?: SnippetJson[];
}

export interface CategoryJson {
  name: string;
  size: number;
}

export interface ExploreResponse {
  query: string;
  lang: string;
  from_cache: boolean;
  generated_at: string;
  concept: ConceptJson;
  entities: EntityJson[];
  categories?: CategoryJson[];
}

export interface ApiError {
  error: { code: string; message: string };
}

export type Rgb = readonly [number, number, number];

/** One result panel, in response rank order. */
export interface PanelView {
  title: string;
  url: string;
  thumbnail?: string;
  relatedness: number;
  markerColor: Rgb;
  category?: string;
  snippets: SnippetJson[];
}
