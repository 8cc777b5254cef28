/** UI state and pure transition functions.
 *
 * Every transition takes the previous state plus a service response and
 * returns a new state, so rendering is a pure function of what the
 * service said — nothing here re-derives recognition or grading results.
 */

import type {
  Feedback,
  Mode,
  QuestionPayload,
  RawStroke,
  Report,
  SceneDocument,
  SessionResponse,
  StrokeResponse,
} from "./types.js";

export interface UiState {
  sessionId: string | null;
  mode: Mode | null;
  lessonTitle: string;
  question: QuestionPayload | null;
  /** raw strokes drawn on the current question, in canvas pixel space */
  strokes: RawStroke[];
  scene: SceneDocument | null;
  feedback: Feedback | null;
  report: Report | null;
  inkColor: string;
  beautify: boolean;
  /** connection-retry banner text, or null when the link is healthy */
  banner: string | null;
}

export const INK_COLORS = ["black", "blue", "red", "green"];

export function initialState(): UiState {
  return {
    sessionId: null,
    mode: null,
    lessonTitle: "",
    question: null,
    strokes: [],
    scene: null,
    feedback: null,
    report: null,
    inkColor: INK_COLORS[0],
    beautify: true,
    banner: null,
  };
}

export function startSession(state: UiState, response: SessionResponse): UiState {
  return {
    ...initialState(),
    inkColor: state.inkColor,
    beautify: state.beautify,
    sessionId: response.session_id,
    mode: response.mode,
    lessonTitle: response.lesson.title,
    question: response.question,
  };
}

export function applyStroke(state: UiState, stroke: RawStroke,
                            response: StrokeResponse): UiState {
  return {
    ...state,
    strokes: [...state.strokes, stroke],
    scene: response.scene,
    banner: null,
  };
}

export function applyUndo(state: UiState, response: StrokeResponse): UiState {
  return {
    ...state,
    strokes: state.strokes.slice(0, -1),
    scene: response.scene,
    banner: null,
  };
}

export function applyClear(state: UiState, response: StrokeResponse): UiState {
  return { ...state, strokes: [], scene: response.scene, banner: null };
}

export function applyCheck(state: UiState, feedback: Feedback): UiState {
  return {
    ...state,
    feedback,
    report: feedback.report ?? state.report,
    banner: null,
  };
}

export function applyNavigate(state: UiState, question: QuestionPayload): UiState {
  return {
    ...state,
    question,
    strokes: [],
    scene: null,
    feedback: null,
    banner: null,
  };
}

export function setBeautify(state: UiState, on: boolean): UiState {
  return { ...state, beautify: on };
}

export function setInkColor(state: UiState, color: string): UiState {
  return { ...state, inkColor: color };
}

export function setBanner(state: UiState, message: string): UiState {
  return { ...state, banner: message };
}
