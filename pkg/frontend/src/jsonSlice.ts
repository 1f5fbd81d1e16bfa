/**
 * Positional JSON scanner: finds the exact character range of each top-level
 * field's value inside a JSON object document.
 *
 * The console shows the request/response envelopes exactly as the service
 * sent them, so it slices the raw body text instead of re-serializing parsed
 * objects (which could reorder keys or re-escape strings).
 */

export interface Slice {
  start: number;
  end: number; // exclusive
}

const WHITESPACE = new Set([" ", "\t", "\n", "\r"]);

function skipWs(text: string, i: number): number {
  while (i < text.length && WHITESPACE.has(text[i]!)) i++;
  return i;
}

function skipString(text: string, i: number): number {
  if (text[i] !== '"') throw new Error(`expected string at ${i}`);
  i++;
  while (i < text.length) {
    const ch = text[i];
    if (ch === "\\") {
      i += 2;
      continue;
    }
    if (ch === '"') return i + 1;
    i++;
  }
  throw new Error("unterminated string");
}

/** Returns the index just past the JSON value starting at i. */
export function skipValue(text: string, i: number): number {
  i = skipWs(text, i);
  const ch = text[i];
  if (ch === undefined) throw new Error("unexpected end of document");
  if (ch === '"') return skipString(text, i);
  if (ch === "{" || ch === "[") {
    const close = ch === "{" ? "}" : "]";
    i++;
    i = skipWs(text, i);
    if (text[i] === close) return i + 1;
    for (;;) {
      if (ch === "{") {
        i = skipString(text, skipWs(text, i));
        i = skipWs(text, i);
        if (text[i] !== ":") throw new Error(`expected ':' at ${i}`);
        i++;
      }
      i = skipValue(text, i);
      i = skipWs(text, i);
      if (text[i] === ",") {
        i = skipWs(text, i + 1);
        continue;
      }
      if (text[i] === close) return i + 1;
      throw new Error(`expected ',' or '${close}' at ${i}`);
    }
  }
  // literals and numbers run until a delimiter
  let j = i;
  while (j < text.length && !WHITESPACE.has(text[j]!) && !",}]".includes(text[j]!)) j++;
  if (j === i) throw new Error(`unexpected character at ${i}`);
  return j;
}

/** Character ranges of every top-level field value in a JSON object. */
export function topLevelSlices(text: string): Map<string, Slice> {
  const slices = new Map<string, Slice>();
  let i = skipWs(text, 0);
  if (text[i] !== "{") throw new Error("document is not a JSON object");
  i = skipWs(text, i + 1);
  if (text[i] === "}") return slices;
  for (;;) {
    const keyStart = i;
    i = skipString(text, i);
    const key = JSON.parse(text.slice(keyStart, i)) as string;
    i = skipWs(text, i);
    if (text[i] !== ":") throw new Error(`expected ':' at ${i}`);
    i = skipWs(text, i + 1);
    const start = i;
    i = skipValue(text, i);
    slices.set(key, { start, end: i });
    i = skipWs(text, i);
    if (text[i] === ",") {
      i = skipWs(text, i + 1);
      continue;
    }
    if (text[i] === "}") return slices;
    throw new Error(`expected ',' or '}' at ${i}`);
  }
}

/** The raw text of one top-level field, exactly as it appears in the body. */
export function sliceField(text: string, field: string): string {
  const slice = topLevelSlices(text).get(field);
  if (slice === undefined) throw new Error(`no top-level field ${JSON.stringify(field)}`);
  return text.slice(slice.start, slice.end);
}
