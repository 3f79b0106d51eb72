// Typed client for the liargame session service. The UI talks to the
// service through this module only; it performs no game computation.

export interface SummaryPayload {
  a: number;
  b: number;
  questions_remaining: number;
  weight: number;
}

export interface QuestionPayload {
  number: number;
  budget: number;
  tag: string;
  kind: "bit" | "ids" | "range";
  text: string;
  label?: string;
  bit?: number;
  candidates?: number[];
  bookkeeping_count?: number;
}

export type SessionStatus =
  | "in_progress"
  | "won"
  | "responder_caught"
  | "out_of_questions"
  | "expired";

export interface SessionPayload {
  id: string;
  mode: "machine_asks" | "human_asks";
  n: number;
  budget: number;
  status: SessionStatus;
  questions_asked: number;
  summary: SummaryPayload;
  identified: number | null;
  question: QuestionPayload | null;
  transcript_text?: string;
}

export interface AnswerResponse {
  status: SessionStatus;
  summary: SummaryPayload;
  identified: number | null;
  question: QuestionPayload | null;
}

export interface QuestionResponse {
  answer: "yes" | "no";
  status: SessionStatus;
  summary: SummaryPayload;
  identified: number | null;
}

export interface ResponderSpec {
  mode: "honest" | "adversary";
  x?: number;
  lie_at?: number;
}

export type QuestionShape =
  | { ids: number[] }
  | { range: [number, number] }
  | { bit: number };

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class Client {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await res.json();
    if (!res.ok) {
      throw new ApiError(res.status, payload.code ?? "unknown", payload.message ?? res.statusText);
    }
    return payload as T;
  }

  createSession(
    mode: "machine_asks" | "human_asks",
    n: number,
    responder?: ResponderSpec,
  ): Promise<SessionPayload> {
    return this.request<SessionPayload>("POST", "/sessions", { mode, n, responder });
  }

  postAnswer(id: string, value: "yes" | "no"): Promise<AnswerResponse> {
    return this.request<AnswerResponse>("POST", `/sessions/${id}/answer`, { value });
  }

  postQuestion(id: string, question: QuestionShape): Promise<QuestionResponse> {
    return this.request<QuestionResponse>("POST", `/sessions/${id}/question`, question);
  }

  getSession(id: string): Promise<SessionPayload> {
    return this.request<SessionPayload>("GET", `/sessions/${id}`);
  }
}
