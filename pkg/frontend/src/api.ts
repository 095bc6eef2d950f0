import type { ApiError, ExploreResponse } from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

/** Thrown when a response arrives after a newer request superseded it. */
export class Superseded extends Error {
  constructor() {
    super("request superseded by a newer one");
  }
}

async function errorFrom(response: Response): Promise<ServiceError> {
  try {
    const body = (await response.json()) as ApiError;
    return new ServiceError(body.error.code, body.error.message);
  } catch {
    return new ServiceError("http_error", `request failed with ${response.status}`);
  }
}

/**
 * Client for the exploration service.  Each endpoint is latest-wins:
 * when a newer call starts before an older one resolves, the older call
 * rejects with Superseded instead of delivering stale data.
 */
export class ApiClient {
  private exploreSeq = 0;
  private suggestSeq = 0;

  constructor(private readonly baseUrl = "") {}

  async suggest(term: string, lang: string, limit = 10): Promise<string[]> {
    const seq = ++this.suggestSeq;
    const params = new URLSearchParams({ q: term, lang, limit: String(limit) });
    const response = await fetch(`${this.baseUrl}/api/suggest?${params}`);
    if (seq !== this.suggestSeq) {
      throw new Superseded();
    }
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return (await response.json()) as string[];
  }

  async explore(term: string, lang: string): Promise<ExploreResponse> {
    const seq = ++this.exploreSeq;
    const params = new URLSearchParams({ q: term, lang, format: "json" });
    const response = await fetch(`${this.baseUrl}/api/explore?${params}`);
    if (seq !== this.exploreSeq) {
      throw new Superseded();
    }
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return (await response.json()) as ExploreResponse;
  }
}
