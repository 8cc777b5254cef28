/** Pure render-to-string functions.
 *
 * Every panel is a deterministic function of UI state, which is itself
 * built only from service responses — that keeps the whole view
 * snapshot-testable without a browser.
 */

import type {
  Feedback,
  Mode,
  QuestionPayload,
  RawStroke,
  Report,
  SceneDocument,
  SceneStaff,
} from "./types.js";
import { INK_COLORS, UiState } from "./state.js";

export const CANVAS_WIDTH = 900;
export const CANVAS_HEIGHT = 500;

const CLEF_GLYPHS: Record<string, string> = {
  treble_clef: "\u{1D11E}",
  bass_clef: "\u{1D122}",
};

const ACCIDENTAL_GLYPHS: Record<string, string> = {
  sharp: "♯",
  flat: "♭",
};

const REST_GLYPHS: Record<string, string> = {
  whole_rest: "\u{1D13B}",
  half_rest: "\u{1D13C}",
  quarter_rest: "\u{1D13D}",
  eighth_rest: "\u{1D13E}",
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number): string {
  return Number(value.toFixed(2)).toString();
}

/** y coordinate of a staff position (0 = bottom line, 8 = top line). */
function positionToY(staff: SceneStaff, position: number): number {
  const bottom = staff.lineYs[staff.lineYs.length - 1];
  return bottom - (position * staff.step) / 2;
}

function renderRawStrokes(strokes: RawStroke[], color: string): string {
  return strokes
    .map((stroke) => {
      const pts = stroke.points.map((p) => `${fmt(p.x)},${fmt(p.y)}`).join(" ");
      return `<polyline class="raw-stroke" fill="none" stroke="${color}" points="${pts}" />`;
    })
    .join("\n");
}

function renderIdealizedScene(scene: SceneDocument): string {
  const parts: string[] = [];
  const staff = scene.staff;
  if (staff) {
    for (const y of staff.lineYs) {
      parts.push(
        `<line class="staff-line" x1="10" x2="${CANVAS_WIDTH - 10}" ` +
          `y1="${fmt(y)}" y2="${fmt(y)}" stroke="black" />`,
      );
    }
  }
  if (!staff) {
    return parts.join("\n");
  }
  const glyphSize = fmt(staff.step * 3);
  if (scene.clef) {
    const glyph = CLEF_GLYPHS[scene.clef] ?? "?";
    const y = scene.clef === "bass_clef" ? staff.lineYs[1] : staff.lineYs[3];
    parts.push(
      `<text class="clef" data-kind="${scene.clef}" x="30" y="${fmt(y)}" ` +
        `font-size="${glyphSize}">${glyph}</text>`,
    );
  }
  scene.key.forEach((entry, i) => {
    const glyph = ACCIDENTAL_GLYPHS[entry.kind] ?? "?";
    const y = positionToY(staff, entry.position);
    parts.push(
      `<text class="key-accidental" data-kind="${entry.kind}" ` +
        `x="${fmt(110 + i * 1.2 * staff.step)}" y="${fmt(y)}" ` +
        `font-size="${fmt(staff.step * 2)}">${glyph}</text>`,
    );
  });
  if (scene.timeSignature) {
    const x = fmt(110 + scene.key.length * 1.2 * staff.step + staff.step);
    parts.push(
      `<text class="time-signature" x="${x}" y="${fmt(staff.lineYs[2])}" ` +
        `font-size="${fmt(staff.step * 2)}">` +
        `${scene.timeSignature.numerator}</text>`,
      `<text class="time-signature" x="${x}" y="${fmt(staff.lineYs[4])}" ` +
        `font-size="${fmt(staff.step * 2)}">` +
        `${scene.timeSignature.denominator}</text>`,
    );
  }
  let x = 110 + (scene.key.length + (scene.timeSignature ? 1 : 0) + 1) * 2 * staff.step;
  for (const element of scene.timeline) {
    if (element.element === "bar") {
      const x2 = element.kind === "bar_double" ? [x, x + staff.step * 0.4] : [x];
      for (const bx of x2) {
        parts.push(
          `<line class="bar" data-kind="${element.kind}" x1="${fmt(bx)}" ` +
            `x2="${fmt(bx)}" y1="${fmt(staff.lineYs[0])}" ` +
            `y2="${fmt(staff.lineYs[4])}" stroke="black" />`,
        );
      }
    } else if (element.element === "rest") {
      const glyph = REST_GLYPHS[element.kind] ?? "?";
      parts.push(
        `<text class="rest" data-kind="${element.kind}" x="${fmt(x)}" ` +
          `y="${fmt(staff.lineYs[2])}" font-size="${fmt(staff.step * 2)}">` +
          `${glyph}</text>`,
      );
    } else {
      const y = positionToY(staff, element.position);
      const beats = element.durationBeats;
      const filled = beats !== null && beats < 2;
      const dashed = beats === null ? ' stroke-dasharray="3 3"' : "";
      parts.push(
        `<ellipse class="note-head" data-pitch="${element.pitch ?? ""}" ` +
          `data-beats="${beats ?? "inconsistent"}" cx="${fmt(x)}" cy="${fmt(y)}" ` +
          `rx="${fmt(staff.step * 0.65)}" ry="${fmt(staff.step * 0.5)}" ` +
          `fill="${filled ? "black" : "none"}" stroke="black"${dashed} />`,
      );
      if (beats !== null && beats < 4) {
        const up = element.position <= 4;
        const x1 = up ? x + staff.step * 0.65 : x - staff.step * 0.65;
        const y2 = up ? y - staff.step * 3 : y + staff.step * 3;
        parts.push(
          `<line class="stem" x1="${fmt(x1)}" x2="${fmt(x1)}" ` +
            `y1="${fmt(y)}" y2="${fmt(y2)}" stroke="black" />`,
        );
        if (beats < 1) {
          parts.push(
            `<path class="flag" d="M ${fmt(x1)} ${fmt(y2)} q ` +
              `${fmt(staff.step)} ${fmt(up ? staff.step : -staff.step)} ` +
              `${fmt(staff.step * 0.5)} ${fmt(up ? staff.step * 2 : -staff.step * 2)}" ` +
              `fill="none" stroke="black" />`,
          );
        }
      }
    }
    x += staff.step * 2.5;
  }
  return parts.join("\n");
}

/** The sketch area: raw ink, or the idealized scene when beautify is on. */
export function renderCanvas(state: UiState): string {
  const body =
    state.beautify && state.scene
      ? renderIdealizedScene(state.scene)
      : renderRawStrokes(state.strokes, state.inkColor);
  return (
    `<svg class="sketch-area" data-beautify="${state.beautify}" ` +
    `viewBox="0 0 ${CANVAS_WIDTH} ${CANVAS_HEIGHT}" ` +
    `width="${CANVAS_WIDTH}" height="${CANVAS_HEIGHT}">\n${body}\n</svg>`
  );
}

export function renderQuestion(question: QuestionPayload | null,
                               lessonTitle: string): string {
  if (!question) {
    return `<header class="lesson-area"><h1>${escapeHtml(lessonTitle)}</h1></header>`;
  }
  const hint =
    question.hint != null
      ? `\n<p class="hint">Hint: ${escapeHtml(question.hint)}</p>`
      : "";
  return (
    `<header class="lesson-area">\n` +
    `<h1>${escapeHtml(lessonTitle)}</h1>\n` +
    `<p class="question-number">Question ${question.number} of ${question.of}</p>\n` +
    `<p class="question-text">${escapeHtml(question.text)}</p>` +
    hint +
    `\n</header>`
  );
}

/** Feedback window: verdict sentence, solution image, criteria, progress. */
export function renderFeedback(feedback: Feedback): string {
  const verdict = feedback.correct
    ? "Your answer is correct."
    : "Your answer is not correct.";
  const rows = feedback.results
    .map(
      (r) =>
        `<li class="criterion ${r.passed ? "pass" : "fail"}">` +
        `<span class="name">${escapeHtml(r.criterion)}</span>: ` +
        `<span class="detail">${escapeHtml(r.detail)}</span></li>`,
    )
    .join("\n");
  const image = feedback.solution_image
    ? `\n<img class="solution" src="${escapeHtml(feedback.solution_image)}" ` +
      `alt="model solution" onerror="this.outerHTML='<div class=&quot;solution placeholder&quot;>solution image unavailable</div>'" />`
    : "";
  const p = feedback.progress;
  return (
    `<section class="feedback ${feedback.correct ? "correct" : "incorrect"}">\n` +
    `<p class="verdict">${verdict}</p>` +
    image +
    `\n<ul class="criteria">\n${rows}\n</ul>\n` +
    `<p class="progress">${p.correct} correct, ${p.incorrect} incorrect, ` +
    `${p.in_progress} in progress</p>\n` +
    `</section>`
  );
}

/** Report window: overall quiz score plus the per-question outcomes. */
export function renderReport(report: Report): string {
  const rows = report.questions
    .map(
      (q) =>
        `<li class="question ${q.correct ? "pass" : "fail"}">` +
        `Question ${q.number}: ${q.correct ? "correct" : "incorrect"} ` +
        `&mdash; ${escapeHtml(q.text)}</li>`,
    )
    .join("\n");
  return (
    `<section class="report">\n` +
    `<h2>Quiz complete</h2>\n` +
    `<p class="score">Score: ${report.score_percent}%</p>\n` +
    `<ol class="questions">\n${rows}\n</ol>\n` +
    `</section>`
  );
}

/** Interaction area: ink palette, edit buttons, beautify toggle, navigation.
 *
 * Quiz mode renders no back-navigation control at all.
 */
export function renderControls(mode: Mode | null, state: UiState): string {
  const palette = INK_COLORS.map(
    (c) =>
      `<button class="ink${c === state.inkColor ? " selected" : ""}" ` +
      `data-action="ink" data-color="${c}">${c}</button>`,
  ).join("\n");
  const back =
    mode === "quiz"
      ? ""
      : `\n<button data-action="back">Back</button>`;
  return (
    `<footer class="interaction-area">\n` +
    `${palette}\n` +
    `<button data-action="clear">Clear</button>\n` +
    `<button data-action="undo">Undo</button>\n` +
    `<button data-action="check">Check answer</button>\n` +
    `<label class="beautify-toggle">` +
    `<input type="checkbox" data-action="beautify"` +
    `${state.beautify ? " checked" : ""} /> Beautify</label>` +
    back +
    `\n<button data-action="next">Next</button>\n` +
    `</footer>`
  );
}

/** Whole-app composition: lesson area, sketch area, interaction area. */
export function renderApp(state: UiState): string {
  const banner = state.banner
    ? `<div class="banner" role="alert">${escapeHtml(state.banner)} ` +
      `<button data-action="retry">Retry</button></div>\n`
    : "";
  const panels = [
    state.feedback ? renderFeedback(state.feedback) : "",
    state.report ? renderReport(state.report) : "",
  ]
    .filter((s) => s)
    .join("\n");
  return (
    banner +
    renderQuestion(state.question, state.lessonTitle) +
    "\n" +
    renderCanvas(state) +
    "\n" +
    (panels ? panels + "\n" : "") +
    renderControls(state.mode, state)
  );
}
