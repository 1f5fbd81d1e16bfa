import { afterEach, describe, expect, it, vi } from "vitest";

import { Transcript, newSessionId } from "../src/transcript.js";

function fakeConverseBody(text: string, intent: string | null) {
  return JSON.stringify({
    answer: intent ? `answer to ${text}` : "Sorry, I didn't understand that.",
    ssml: "<speak>x</speak>",
    intent,
    slots: {},
    request: { request: { intent: { name: intent ?? "FallbackIntent" } } },
    response: { version: "1.0" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("newSessionId", () => {
  it("three consecutive sessions get distinct ids", () => {
    const ids = new Set([newSessionId(), newSessionId(), newSessionId()]);
    expect(ids.size).toBe(3);
  });
});

describe("Transcript", () => {
  it("appends matched turns with the raw envelope slices", async () => {
    vi.stubGlobal("fetch", async () =>
      new Response(fakeConverseBody("what is asthma", "DefinitionIntent"), { status: 200 }),
    );
    const transcript = new Transcript("http://service");
    const turn = await transcript.send("what is asthma");
    expect(turn.intent).toBe("DefinitionIntent");
    expect(turn.error).toBeNull();
    expect(JSON.parse(turn.requestJson)).toEqual({
      request: { intent: { name: "DefinitionIntent" } },
    });
    expect(transcript.turns).toEqual([turn]);
  });

  it("keeps send order even when earlier calls are slower", async () => {
    let calls = 0;
    vi.stubGlobal("fetch", async (_url: unknown, init?: RequestInit) => {
      const { text } = JSON.parse(String(init?.body)) as { text: string };
      calls += 1;
      const delay = calls === 1 ? 40 : 5; // first call is the slowest
      await new Promise((resolve) => setTimeout(resolve, delay));
      return new Response(fakeConverseBody(text, "EchoIntent"), { status: 200 });
    });
    const transcript = new Transcript("http://service");
    const sent = ["one", "two", "three"];
    await Promise.all(sent.map((text) => transcript.send(text)));
    expect(transcript.turns.map((t) => t.userText)).toEqual(sent);
  });

  it("unmatched turns carry a null intent", async () => {
    vi.stubGlobal("fetch", async () =>
      new Response(fakeConverseBody("gibberish", null), { status: 200 }),
    );
    const transcript = new Transcript("http://service");
    const turn = await transcript.send("gibberish");
    expect(turn.intent).toBeNull();
    expect(turn.error).toBeNull();
  });

  it("network failures become visible error turns, never dropped", async () => {
    vi.stubGlobal("fetch", async () => {
      throw new Error("connection refused");
    });
    const transcript = new Transcript("http://service");
    const turn = await transcript.send("hello");
    expect(turn.error).toContain("connection refused");
    expect(transcript.turns).toHaveLength(1);
  });

  it("http errors surface the status", async () => {
    vi.stubGlobal("fetch", async () => new Response('{"error":"nope"}', { status: 400 }));
    const transcript = new Transcript("http://service");
    const turn = await transcript.send("hello");
    expect(turn.error).toContain("400");
  });
});
