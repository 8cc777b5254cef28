/** Browser bootstrap: wires pointer events and buttons to the service
 * client and re-renders the app from state after every response.
 *
 * All logic lives in the pure modules (api/state/render/capture); this
 * file only binds them to the DOM.
 */

import { ServiceClient, ServiceError } from "./api.js";
import { StrokeCapture, toCanvasSpace } from "./capture.js";
import {
  CANVAS_HEIGHT,
  CANVAS_WIDTH,
  renderApp,
} from "./render.js";
import {
  UiState,
  applyCheck,
  applyClear,
  applyNavigate,
  applyStroke,
  applyUndo,
  initialState,
  setBanner,
  setBeautify,
  setInkColor,
  startSession,
} from "./state.js";
import type { Mode } from "./types.js";

export function mount(root: HTMLElement, client: ServiceClient): void {
  let state: UiState = initialState();
  const capture = new StrokeCapture();

  const render = () => {
    root.innerHTML = renderApp(state);
  };

  const guard = async (op: () => Promise<void>) => {
    try {
      await op();
    } catch (err) {
      const detail =
        err instanceof ServiceError ? err.message : "connection failed";
      state = setBanner(state, detail);
    }
    render();
  };

  const begin = (lessonId: string, mode: Mode) =>
    guard(async () => {
      state = startSession(state, await client.createSession(lessonId, mode));
    });

  root.addEventListener("pointerdown", (event) => {
    const svg = (event.target as Element).closest("svg.sketch-area");
    if (!svg || !state.sessionId) {
      return;
    }
    const rect = svg.getBoundingClientRect();
    capture.begin(
      toCanvasSpace(event.clientX, event.clientY, rect, CANVAS_WIDTH, CANVAS_HEIGHT),
    );
  });

  root.addEventListener("pointermove", (event) => {
    const svg = (event.target as Element).closest("svg.sketch-area");
    if (!svg || !capture.isActive) {
      return;
    }
    const rect = svg.getBoundingClientRect();
    capture.move(
      toCanvasSpace(event.clientX, event.clientY, rect, CANVAS_WIDTH, CANVAS_HEIGHT),
    );
  });

  root.addEventListener("pointerup", () => {
    const stroke = capture.end();
    const sessionId = state.sessionId;
    if (!stroke || !sessionId) {
      return;
    }
    void guard(async () => {
      state = applyStroke(state, stroke, await client.submitStroke(sessionId, stroke));
    });
  });

  root.addEventListener("click", (event) => {
    const button = (event.target as Element).closest("[data-action]");
    const sessionId = state.sessionId;
    if (!button || !sessionId) {
      return;
    }
    const action = button.getAttribute("data-action");
    const question = state.question;
    switch (action) {
      case "ink":
        state = setInkColor(state, button.getAttribute("data-color") ?? "black");
        render();
        break;
      case "beautify":
        state = setBeautify(state, (button as HTMLInputElement).checked);
        render();
        break;
      case "clear":
        void guard(async () => {
          state = applyClear(state, await client.clear(sessionId));
        });
        break;
      case "undo":
        void guard(async () => {
          state = applyUndo(state, await client.undo(sessionId));
        });
        break;
      case "check":
        void guard(async () => {
          state = applyCheck(state, await client.check(sessionId));
        });
        break;
      case "back":
      case "next": {
        if (!question) {
          break;
        }
        const to = question.number + (action === "next" ? 1 : -1);
        if (to < 1 || to > question.of) {
          break;
        }
        void guard(async () => {
          const response = await client.navigate(sessionId, to);
          state = applyNavigate(state, response.question);
        });
        break;
      }
      case "retry":
        state = setBanner(state, "");
        render();
        break;
      default:
        break;
    }
  });

  render();
  // expose session start for the lesson picker shell
  (root as HTMLElement & { startLesson?: typeof begin }).startLesson = begin;
}

declare global {
  interface Window {
    notesketchMount?: typeof mount;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.notesketchMount = mount;
  const root = document.getElementById("app");
  if (root) {
    mount(root, new ServiceClient(window.location.origin));
  }
}
