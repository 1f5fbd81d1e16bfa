/** HTTP client for the skill service; the console's only coupling point. */

import { sliceField } from "./jsonSlice.js";

export interface ConverseBody {
  answer: string;
  ssml: string;
  intent: string | null;
  slots: Record<string, unknown>;
  request: unknown;
  response: unknown;
}

export interface ConverseOutcome {
  body: ConverseBody;
  /** Raw response text and the untouched request/response value slices. */
  rawText: string;
  requestPane: string;
  responsePane: string;
  latencyMs: number;
}

export interface Health {
  status: string;
  endpoint: string;
  model: string;
}

export async function converse(
  baseUrl: string,
  sessionId: string,
  text: string,
): Promise<ConverseOutcome> {
  const started = performance.now();
  const resp = await fetch(`${baseUrl}/converse`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ sessionId, text }),
  });
  const rawText = await resp.text();
  const latencyMs = Math.round(performance.now() - started);
  if (!resp.ok) {
    throw new Error(`service answered ${resp.status}: ${rawText.slice(0, 200)}`);
  }
  const body = JSON.parse(rawText) as ConverseBody;
  return {
    body,
    rawText,
    requestPane: sliceField(rawText, "request"),
    responsePane: sliceField(rawText, "response"),
    latencyMs,
  };
}

export async function health(baseUrl: string): Promise<Health> {
  const resp = await fetch(`${baseUrl}/health`);
  if (!resp.ok) throw new Error(`health check failed: ${resp.status}`);
  return (await resp.json()) as Health;
}
