/** Conversation state: one session, its turns, and the send queue. */

import { converse, ConverseOutcome } from "./api.js";
import { RequestQueue } from "./queue.js";

export interface Turn {
  userText: string;
  answerText: string;
  ssml: string;
  intent: string | null;
  slots: Record<string, unknown>;
  requestJson: string;
  responseJson: string;
  latencyMs: number;
  error: string | null;
}

export function newSessionId(): string {
  const noise = Math.random().toString(36).slice(2, 10);
  return `console-${Date.now().toString(36)}-${noise}`;
}

export class Transcript {
  readonly sessionId: string;
  readonly turns: Turn[] = [];
  private readonly queue = new RequestQueue();

  constructor(
    private readonly baseUrl: string,
    sessionId: string = newSessionId(),
  ) {
    this.sessionId = sessionId;
  }

  /** Queued send; the returned turn is already appended to the transcript. */
  send(text: string): Promise<Turn> {
    return this.queue.run(async () => {
      let turn: Turn;
      try {
        const outcome: ConverseOutcome = await converse(this.baseUrl, this.sessionId, text);
        turn = {
          userText: text,
          answerText: outcome.body.answer,
          ssml: outcome.body.ssml,
          intent: outcome.body.intent,
          slots: outcome.body.slots,
          requestJson: outcome.requestPane,
          responseJson: outcome.responsePane,
          latencyMs: outcome.latencyMs,
          error: null,
        };
      } catch (err) {
        // a failed call still lands in the transcript; nothing is dropped
        turn = {
          userText: text,
          answerText: "",
          ssml: "",
          intent: null,
          slots: {},
          requestJson: "",
          responseJson: "",
          latencyMs: 0,
          error: err instanceof Error ? err.message : String(err),
        };
      }
      this.turns.push(turn);
      return turn;
    });
  }
}
