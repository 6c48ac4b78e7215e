import { describe, expect, it } from "vitest";

import { ApiClient, FetchLike } from "../src/api";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function fakeServer(
  handler: (url: string, init?: RequestInit) => Response,
): { fetchFn: FetchLike; calls: { url: string; init?: RequestInit }[] } {
  const calls: { url: string; init?: RequestInit }[] = [];
  return {
    calls,
    fetchFn: async (url, init) => {
      calls.push({ url, init });
      return handler(url, init);
    },
  };
}

describe("ApiClient.saveSegmentation", () => {
  it("acknowledges a clean first save", async () => {
    const { fetchFn, calls } = fakeServer(() =>
      jsonResponse(200, { revision: 1 }),
    );
    const api = new ApiClient("", fetchFn);
    const outcome = await api.saveSegmentation(
      "ann",
      "t1",
      { boundaries: [3, 10], selected: [[3, 10]] },
      null,
    );
    expect(outcome).toEqual({ ok: true, revision: 1, conflict: false });
    expect(calls[0]?.url).toBe("/api/segmentations/ann/t1");
    expect(calls[0]?.init?.method).toBe("PUT");
    expect(JSON.parse(calls[0]?.init?.body as string)).toEqual({
      boundaries: [3, 10],
      selected: [[3, 10]],
    });
  });

  it("flags a revision conflict when the server skipped ahead", async () => {
    const { fetchFn } = fakeServer(() => jsonResponse(200, { revision: 5 }));
    const api = new ApiClient("", fetchFn);
    const outcome = await api.saveSegmentation(
      "ann",
      "t1",
      { boundaries: [] },
      2, // we last saw revision 2, so 3 was expected
    );
    expect(outcome.ok).toBe(true);
    expect(outcome.conflict).toBe(true);
  });

  it("surfaces server-side violations on 400", async () => {
    const { fetchFn } = fakeServer(() =>
      jsonResponse(400, { violations: ["boundary 99 outside valid gap range"] }),
    );
    const api = new ApiClient("", fetchFn);
    const outcome = await api.saveSegmentation(
      "ann",
      "t1",
      { boundaries: [99] },
      null,
    );
    expect(outcome.ok).toBe(false);
    expect(outcome.violations).toEqual([
      "boundary 99 outside valid gap range",
    ]);
  });

  it("throws on transport-level failure so callers can keep state", async () => {
    const api = new ApiClient("", async () => {
      throw new Error("connection refused");
    });
    await expect(
      api.saveSegmentation("ann", "t1", { boundaries: [] }, null),
    ).rejects.toThrow("connection refused");
  });
});

describe("ApiClient fetchers", () => {
  it("returns null for a not-yet-saved segmentation", async () => {
    const { fetchFn } = fakeServer(() => jsonResponse(404, { detail: "none" }));
    const api = new ApiClient("", fetchFn);
    expect(await api.getSegmentation("ann", "t1")).toBeNull();
  });

  it("escapes path segments", async () => {
    const { fetchFn, calls } = fakeServer(() =>
      jsonResponse(200, { boundaries: [] }),
    );
    const api = new ApiClient("", fetchFn);
    await api.getSegmentation("a b", "t/1");
    expect(calls[0]?.url).toBe("/api/segmentations/a%20b/t%2F1");
  });
});
