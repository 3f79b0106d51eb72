// Pure view-model construction: service payloads in, render-ready fields
// out. Every a/b/weight number is copied from the payload untouched; the
// only derived quantity is the 2^j budget line of the weight meter, which
// is display geometry, not game logic.

import type { QuestionPayload, SessionPayload, SessionStatus } from "./api.js";

export interface TranscriptRow {
  question: string;
  answer: string;
  a: string;
  b: string;
  j: string;
  tag: string;
}

export interface Meter {
  weight: number;
  budgetLine: number; // 2^(questions remaining)
  fraction: number; // weight / budgetLine, clamped to [0, 1]
}

export interface ViewModel {
  sessionId: string;
  mode: "machine_asks" | "human_asks";
  n: number;
  budget: number;
  status: SessionStatus;
  banner: string;
  terminal: boolean;
  a: number;
  b: number;
  weight: number;
  questionsRemaining: number;
  questionsAsked: number;
  meter: Meter;
  questionHeading: string;
  questionText: string;
  questionTag: string;
  hasQuestion: boolean;
  identified: number | null;
  lieHint: string;
  transcriptText: string;
  transcriptRows: TranscriptRow[];
}

export function statusBanner(status: SessionStatus, identified: number | null): string {
  switch (status) {
    case "in_progress":
      return "";
    case "won":
      return identified === null ? "Identified." : `Your number is ${identified}.`;
    case "responder_caught":
      return "Caught: those answers fit no number with at most one lie.";
    case "out_of_questions":
      return "Out of questions before narrowing to one candidate.";
    case "expired":
      return "Session expired after inactivity.";
  }
}

export function questionHeading(q: QuestionPayload): string {
  return `Question ${q.number} of ${q.budget}`;
}

export function questionBodyText(q: QuestionPayload): string {
  if (q.kind === "bit") {
    return q.text;
  }
  const listed = (q.candidates ?? []).join(", ");
  const hidden = q.bookkeeping_count ?? 0;
  const suffix = hidden > 0 ? ` (plus ${hidden} bookkeeping token${hidden === 1 ? "" : "s"})` : "";
  return `Is your number one of: ${listed}?${suffix}`;
}

export function weightMeter(weight: number, questionsRemaining: number): Meter {
  const budgetLine = Math.pow(2, questionsRemaining);
  const fraction = budgetLine > 0 ? Math.min(1, weight / budgetLine) : 1;
  return { weight, budgetLine, fraction };
}

// Transcript rows are split out of the canonical text purely for table
// layout; the fields stay verbatim strings.
export function parseTranscriptRows(text: string): TranscriptRow[] {
  const rows: TranscriptRow[] = [];
  for (const line of text.split("\n")) {
    if (!line) continue;
    const fields = line.split("\t");
    const summary = (fields[2] ?? "").split(",");
    rows.push({
      question: fields[0] ?? "",
      answer: fields[1] ?? "",
      a: summary[0] ?? "",
      b: summary[1] ?? "",
      j: summary[2] ?? "",
      tag: fields[3] ?? "",
    });
  }
  return rows;
}

export const LIE_HINT =
  "You may lie once. The machine cannot tell whether you have spent your lie; play sneaky.";

export function buildViewModel(payload: SessionPayload): ViewModel {
  const transcriptText = payload.transcript_text ?? "";
  const q = payload.question;
  return {
    sessionId: payload.id,
    mode: payload.mode,
    n: payload.n,
    budget: payload.budget,
    status: payload.status,
    banner: statusBanner(payload.status, payload.identified),
    terminal: payload.status !== "in_progress",
    a: payload.summary.a,
    b: payload.summary.b,
    weight: payload.summary.weight,
    questionsRemaining: payload.summary.questions_remaining,
    questionsAsked: payload.questions_asked,
    meter: weightMeter(payload.summary.weight, payload.summary.questions_remaining),
    questionHeading: q ? questionHeading(q) : "",
    questionText: q ? questionBodyText(q) : "",
    questionTag: q ? q.tag : "",
    hasQuestion: q !== null && payload.status === "in_progress",
    identified: payload.identified,
    lieHint: payload.mode === "machine_asks" && payload.status === "in_progress" ? LIE_HINT : "",
    transcriptText,
    transcriptRows: parseTranscriptRows(transcriptText),
  };
}
