/** Wire types for the notesketch HTTP service (all endpoints under /v1). */

export interface LessonSummary {
  id: string;
  title: string;
  modes: string[];
  questions: number;
}

export interface LessonsResponse {
  lessons: LessonSummary[];
}

export type Mode = "practice" | "quiz";

export interface QuestionPayload {
  number: number;
  of: number;
  text: string;
  criteria: Record<string, boolean>;
  /** present only in practice mode */
  hint?: string | null;
  /** present only in practice mode */
  solution_image?: string | null;
}

export interface SessionResponse {
  session_id: string;
  mode: Mode;
  lesson: { id: string; title: string };
  question: QuestionPayload;
}

export interface SceneStaff {
  lineYs: number[];
  step: number;
}

export interface SceneKeyEntry {
  kind: string;
  position: number;
}

export interface SceneTimeSignature {
  numerator: number;
  denominator: number;
}

export type SceneElement =
  | { element: "note"; pitch: string | null; durationBeats: number | null; position: number }
  | { element: "rest"; kind: string }
  | { element: "bar"; kind: string };

export interface SceneDocument {
  version: string;
  staff: SceneStaff | null;
  clef: string | null;
  key: SceneKeyEntry[];
  timeSignature: SceneTimeSignature | null;
  timeline: SceneElement[];
}

export interface SceneEvent {
  kind: string;
  what: string;
  strokeIds: number[];
}

export interface StrokeResponse {
  events: SceneEvent[];
  scene: SceneDocument;
}

export interface CriterionRow {
  criterion: string;
  passed: boolean;
  detail: string;
}

export interface Progress {
  correct: number;
  incorrect: number;
  in_progress: number;
}

export interface ReportQuestion {
  number: number;
  text: string;
  correct: boolean;
  solution_image: string;
}

export interface Report {
  score_percent: number;
  questions: ReportQuestion[];
}

export interface Feedback {
  correct: boolean;
  results: CriterionRow[];
  progress: Progress;
  solution_image?: string;
  report?: Report;
}

export interface StrokePoint {
  x: number;
  y: number;
  t?: number;
}

export interface RawStroke {
  id?: number;
  points: StrokePoint[];
}
