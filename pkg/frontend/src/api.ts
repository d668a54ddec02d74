/**
 * Typed client for the rating-service JSON API.
 *
 * Every request/response pair can be recorded through an exchange hook;
 * the blindness test uses that as its network capture.
 */

export interface TaskPayload {
  task_id: string;
  record_id: string;
  original_text: string;
  expert_summary: string;
  candidate_text: string;
  blind_label: string;
}

export interface Progress {
  rated: number;
  task_count: number;
}

export interface NextTaskResponse {
  done: boolean;
  task: TaskPayload | null;
  progress: Progress;
}

export interface SessionInfo {
  task_count: number;
  progress: Progress;
}

export interface RatingBody {
  task_id: string;
  rater_id: string;
  overall: number;
  criteria?: Record<string, number>;
}

/** Service outcome of one rating submission, mapped from the HTTP status. */
export type SubmitStatus = 'accepted' | 'duplicate' | 'invalid' | 'unknown_task';

export interface SubmitOutcome {
  status: SubmitStatus;
  httpStatus: number;
  detail?: string;
}

export interface Exchange {
  method: string;
  url: string;
  requestBody: string | null;
  status: number;
  responseBody: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
    private readonly onExchange?: (exchange: Exchange) => void,
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<{ status: number; json: unknown }> {
    const url = `${this.baseUrl}${path}`;
    const requestBody = body === undefined ? null : JSON.stringify(body);
    const response = await this.fetchFn(url, {
      method,
      headers: requestBody === null ? undefined : { 'Content-Type': 'application/json' },
      body: requestBody ?? undefined,
    });
    const responseBody = await response.text();
    this.onExchange?.({ method, url, requestBody, status: response.status, responseBody });
    return { status: response.status, json: responseBody ? JSON.parse(responseBody) : null };
  }

  async session(raterId: string): Promise<SessionInfo> {
    const { json } = await this.request('GET', `/api/session?rater=${encodeURIComponent(raterId)}`);
    return json as SessionInfo;
  }

  async nextTask(raterId: string): Promise<NextTaskResponse> {
    const { json } = await this.request('GET', `/api/task/next?rater=${encodeURIComponent(raterId)}`);
    return json as NextTaskResponse;
  }

  async submitRating(body: RatingBody): Promise<SubmitOutcome> {
    const { status, json } = await this.request('POST', '/api/rating', body);
    const detail = (json as { error?: string } | null)?.error;
    if (status === 201) return { status: 'accepted', httpStatus: status };
    if (status === 409) return { status: 'duplicate', httpStatus: status, detail };
    if (status === 422) return { status: 'invalid', httpStatus: status, detail };
    if (status === 404) return { status: 'unknown_task', httpStatus: status, detail };
    throw new Error(`unexpected rating response: ${status} ${detail ?? ''}`);
  }
}
