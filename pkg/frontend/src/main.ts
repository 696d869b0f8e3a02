/**
 * Browser entry point: wires the tested core (cache, drill, sync, countdown)
 * to the DOM. Lectures load over the API when online and from the cache
 * when not; answers queue locally and sync in the background.
 */

import { ApiClient, OfflineError } from "./api.js";
import { LectureCache } from "./cache.js";
import { Countdown } from "./countdown.js";
import { DrillSession, type FeedbackView, type QuestionView } from "./drill.js";
import { browserStore } from "./storage.js";
import { SyncEngine } from "./sync.js";
import type { Catalog } from "./types.js";

declare global {
  interface Window {
    MathJax?: { typesetPromise?: (nodes?: Element[]) => Promise<void> };
  }
}

const $ = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
};

interface AppState {
  api: ApiClient;
  studentId: string;
  cache: LectureCache | null;
  session: DrillSession | null;
  sync: SyncEngine | null;
  countdown: Countdown | null;
}

const state: AppState = {
  api: new ApiClient("", ""),
  studentId: "",
  cache: null,
  session: null,
  sync: null,
  countdown: null,
};

function setStatus(text: string): void {
  $("status").textContent = text;
}

function typeset(roots: Element[]): void {
  window.MathJax?.typesetPromise?.(roots).catch(() => undefined);
}

async function connect(): Promise<void> {
  const token = ($("token") as HTMLInputElement).value.trim();
  const studentId = ($("student-id") as HTMLInputElement).value.trim();
  if (!token || !studentId) {
    setStatus("enter your student id and bearer token");
    return;
  }
  state.api = new ApiClient("", token);
  state.studentId = studentId;
  window.localStorage.setItem("drillkit:login", JSON.stringify({ token, studentId }));
  await showLectures();
}

async function showLectures(): Promise<void> {
  const list = $("lectures");
  list.innerHTML = "";
  let catalog: Catalog | null = null;
  try {
    catalog = await state.api.getCatalog();
    setStatus("online");
  } catch (err) {
    setStatus(err instanceof OfflineError ? "offline: showing cached lectures" : String(err));
  }
  const seen = new Set<string>();
  if (catalog) {
    for (const course of catalog.courses) {
      for (const tutorial of course.tutorials) {
        for (const lecture of tutorial.lectures) {
          seen.add(lecture.id);
          addLectureButton(list, lecture.id, `${course.title} / ${lecture.title}`, false);
        }
      }
    }
  }
  // lectures already on this device remain usable with no connection
  for (let i = 0; i < window.localStorage.length; i++) {
    const key = window.localStorage.key(i);
    const prefix = `drillkit:${state.studentId}:`;
    if (key?.startsWith(prefix)) {
      const lectureId = key.slice(prefix.length);
      if (!seen.has(lectureId)) addLectureButton(list, lectureId, `${lectureId} (cached)`, true);
    }
  }
  if (!list.hasChildNodes()) {
    list.textContent = catalog ? "no lectures on the server yet" : "nothing cached and no network";
  }
}

function addLectureButton(
  list: HTMLElement,
  lectureId: string,
  label: string,
  cachedOnly: boolean,
): void {
  const button = document.createElement("button");
  button.textContent = label + (cachedOnly ? "" : "");
  button.onclick = () => startDrill(lectureId);
  list.appendChild(button);
}

async function startDrill(lectureId: string): Promise<void> {
  const cache = new LectureCache(browserStore(), state.studentId, lectureId);
  try {
    cache.install(await state.api.getAllocation(lectureId));
    setStatus("allocation refreshed");
  } catch (err) {
    if (!(err instanceof OfflineError)) {
      setStatus(String(err));
      return;
    }
    if (!cache.loaded) {
      setStatus("this lecture is not cached and you are offline");
      return;
    }
    setStatus("offline: drilling from cache");
  }
  state.cache = cache;
  state.session = new DrillSession(cache);
  state.sync = new SyncEngine(state.api, cache, state.studentId, {
    onReallocationNeeded: () => setStatus("some answers need a fresh allocation; reconnect"),
    onServerGrade: (grade) => setStatus(`synced; server grade ${grade.toFixed(2)}`),
  });
  $("drill").hidden = false;
  $("lectures").hidden = true;
  renderQuestion(state.session.nextQuestion());
  void backgroundSync();
}

function renderQuestion(view: QuestionView): void {
  state.countdown?.stop();
  $("stem").innerHTML = "";
  $("stem").textContent = view.stem;
  $("feedback").hidden = true;
  $("grade").textContent = `grade ${view.grade.toFixed(2)} after ${view.answered} answers`;
  const image = $("question-image") as HTMLImageElement;
  image.hidden = view.imageUrl === null;
  if (view.imageUrl !== null) image.src = view.imageUrl;

  const choicesNode = $("choices");
  choicesNode.innerHTML = "";
  view.choices.forEach((choice, position) => {
    const button = document.createElement("button");
    button.className = "choice";
    button.textContent = choice.text;
    button.onclick = () => answer(position);
    choicesNode.appendChild(button);
  });

  const bar = $("countdown");
  if (view.countdownSeconds === null) {
    bar.hidden = true; // no limit configured for this lecture
    state.countdown = null;
  } else {
    bar.hidden = false;
    state.countdown = new Countdown(view.countdownSeconds, {
      onTick: (remaining) => {
        bar.textContent = `${remaining.toFixed(1)}s`;
      },
      onExpire: () => {
        if (state.session) renderFeedback(state.session.expire());
      },
    });
    state.countdown.start();
  }
  typeset([$("stem"), choicesNode]);
}

function answer(position: number): void {
  if (!state.session) return;
  state.countdown?.stop();
  renderFeedback(state.session.submit(position));
}

function renderFeedback(feedback: FeedbackView): void {
  const node = $("feedback");
  node.hidden = false;
  $("verdict").textContent = feedback.timedOut
    ? "out of time"
    : feedback.correct
      ? "correct"
      : "incorrect";
  $("explanation").textContent = feedback.explanation;
  $("grade").textContent = `grade ${feedback.grade.toFixed(2)} after ${feedback.answered} answers`;
  typeset([$("explanation")]);
  void backgroundSync();
}

async function backgroundSync(): Promise<void> {
  if (!state.sync) return;
  try {
    await state.sync.syncWithRetry(3);
  } catch (err) {
    setStatus(String(err));
  }
}

function init(): void {
  $("connect").onclick = () => void connect();
  $("next").onclick = () => {
    if (state.session) renderQuestion(state.session.nextQuestion());
  };
  $("back").onclick = () => {
    state.countdown?.stop();
    $("drill").hidden = true;
    $("lectures").hidden = false;
    void showLectures();
  };
  const saved = window.localStorage.getItem("drillkit:login");
  if (saved) {
    const { token, studentId } = JSON.parse(saved) as { token: string; studentId: string };
    ($("token") as HTMLInputElement).value = token;
    ($("student-id") as HTMLInputElement).value = studentId;
  }
  if ("serviceWorker" in navigator) {
    void navigator.serviceWorker.register("sw.js");
  }
}

document.addEventListener("DOMContentLoaded", init);
