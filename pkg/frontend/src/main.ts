/** DOM wiring for the test console. */

import { health } from "./api.js";
import { Transcript, Turn } from "./transcript.js";

const baseUrl = window.location.origin;

const transcriptEl = document.getElementById("transcript") as HTMLElement;
const inputEl = document.getElementById("utterance") as HTMLInputElement;
const formEl = document.getElementById("composer") as HTMLFormElement;
const newSessionEl = document.getElementById("new-session") as HTMLButtonElement;
const sessionLabelEl = document.getElementById("session-label") as HTMLElement;
const requestPaneEl = document.getElementById("request-pane") as HTMLElement;
const responsePaneEl = document.getElementById("response-pane") as HTMLElement;
const ssmlPaneEl = document.getElementById("ssml-pane") as HTMLElement;
const healthEl = document.getElementById("health") as HTMLElement;

let transcript = new Transcript(baseUrl);
let selected: Turn | null = null;

function renderPanes(): void {
  requestPaneEl.textContent = selected ? selected.requestJson : "";
  responsePaneEl.textContent = selected ? selected.responseJson : "";
  ssmlPaneEl.textContent = selected ? selected.ssml : "";
}

function turnElement(turn: Turn): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "turn";

  const user = document.createElement("div");
  user.className = "bubble user";
  user.textContent = turn.userText;
  wrap.appendChild(user);

  const answer = document.createElement("div");
  if (turn.error !== null) {
    answer.className = "bubble error";
    answer.textContent = `request failed: ${turn.error}`;
  } else {
    answer.className = "bubble skill";
    answer.textContent = turn.answerText;
    const badge = document.createElement("span");
    if (turn.intent === null) {
      badge.className = "badge unmatched";
      badge.textContent = "unmatched";
    } else {
      badge.className = "badge intent";
      badge.textContent = turn.intent;
    }
    answer.appendChild(badge);
    const latency = document.createElement("span");
    latency.className = "latency";
    latency.textContent = `${turn.latencyMs} ms`;
    answer.appendChild(latency);
  }
  wrap.appendChild(answer);
  wrap.addEventListener("click", () => {
    selected = turn;
    renderPanes();
    for (const el of transcriptEl.querySelectorAll(".turn.selected")) {
      el.classList.remove("selected");
    }
    wrap.classList.add("selected");
  });
  return wrap;
}

function appendTurn(turn: Turn): void {
  const el = turnElement(turn);
  transcriptEl.appendChild(el);
  selected = turn;
  renderPanes();
  for (const other of transcriptEl.querySelectorAll(".turn.selected")) {
    other.classList.remove("selected");
  }
  el.classList.add("selected");
  transcriptEl.scrollTop = transcriptEl.scrollHeight;
}

function resetSession(): void {
  transcript = new Transcript(baseUrl);
  transcriptEl.textContent = "";
  selected = null;
  renderPanes();
  sessionLabelEl.textContent = transcript.sessionId;
}

formEl.addEventListener("submit", (event) => {
  event.preventDefault();
  const text = inputEl.value.trim();
  if (!text) return;
  inputEl.value = "";
  void transcript.send(text).then(appendTurn);
});

newSessionEl.addEventListener("click", resetSession);

sessionLabelEl.textContent = transcript.sessionId;
void health(baseUrl)
  .then((h) => {
    healthEl.textContent = `${h.model} · graph at ${h.endpoint}`;
  })
  .catch(() => {
    healthEl.textContent = "service unreachable";
  });
