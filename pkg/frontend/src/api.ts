// Thin typed client for the wbkit service.

import type {
  DiffResponse,
  EvalResponse,
  ParseResponse,
  SchemesResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      detail = body.detail ?? body.error ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  schemes(): Promise<SchemesResponse> {
    return getJson(`${this.base}/api/schemes`);
  }

  parse(scheme: string, sent: number): Promise<ParseResponse> {
    return getJson(
      `${this.base}/api/parse?scheme=${encodeURIComponent(scheme)}&sent=${sent}`,
    );
  }

  diff(left: string, right: string, sent: number): Promise<DiffResponse> {
    return getJson(
      `${this.base}/api/diff?left=${encodeURIComponent(left)}` +
        `&right=${encodeURIComponent(right)}&sent=${sent}`,
    );
  }

  evaluate(left: string, right: string): Promise<EvalResponse> {
    return getJson(
      `${this.base}/api/eval?left=${encodeURIComponent(left)}` +
        `&right=${encodeURIComponent(right)}`,
    );
  }
}
