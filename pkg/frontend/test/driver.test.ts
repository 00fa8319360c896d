import { describe, expect, it } from "vitest";
import { SessionClient, type FetchLike } from "../src/api.js";
import { SessionDriver } from "../src/driver.js";
import type { ViewModel } from "../src/viewmodel.js";
import { snapshot } from "./fixtures.js";

/** Stubbed service whose submit resolves only when released. */
function gatedService() {
  let release!: () => void;
  const gate = new Promise<void>((resolve) => (release = resolve));
  let submits = 0;
  const fetchImpl: FetchLike = async (url) => {
    if (url.endsWith("/interactions")) {
      submits += 1;
      await gate;
    }
    return new Response(JSON.stringify(snapshot({ bestQuality: 0.6 + submits / 100 })), {
      status: 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchImpl, release, submitted: () => submits };
}

describe("SessionDriver", () => {
  it("keeps at most one interaction submission in flight", async () => {
    const service = gatedService();
    const views: ViewModel[] = [];
    const driver = new SessionDriver(
      new SessionClient("http://x", service.fetchImpl),
      "s",
      (vm) => views.push(vm),
    );

    const first = driver.submit({ action: "rate", rating: 50 });
    const second = await driver.submit({ action: "rate", rating: 60 });
    expect(second).toBe(false); // refused locally, no wire call
    expect(service.submitted()).toBe(1);

    service.release();
    expect(await first).toBe(true);
    expect(await driver.submit({ action: "archive" })).toBe(true);
    expect(service.submitted()).toBe(2);
    expect(views.length).toBe(2);
  });

  it("pushes an error view on wire failures and recovers on the next poll", async () => {
    let failures = 1;
    const fetchImpl: FetchLike = async () => {
      if (failures-- > 0) {
        return new Response(JSON.stringify({ detail: "boom" }), { status: 500 });
      }
      return new Response(JSON.stringify(snapshot()), { status: 200 });
    };
    const views: ViewModel[] = [];
    const driver = new SessionDriver(new SessionClient("http://x", fetchImpl), "s", (vm) =>
      views.push(vm),
    );
    await driver.poll();
    expect(views[0]!.kind).toBe("error");
    await driver.poll();
    expect(views[1]!.kind).toBe("view");
  });

  it("accumulates the best-quality curve across views", async () => {
    const qualities = [0.5, 0.55, 0.61];
    let i = 0;
    const fetchImpl: FetchLike = async () =>
      new Response(JSON.stringify(snapshot({ bestQuality: qualities[i++] ?? 0.61 })), {
        status: 200,
      });
    const driver = new SessionDriver(new SessionClient("http://x", fetchImpl), "s", () => {});
    await driver.poll();
    await driver.poll();
    await driver.poll();
    expect(driver.curve).toEqual(qualities);
  });
});
