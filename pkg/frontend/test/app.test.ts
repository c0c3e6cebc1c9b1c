import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { CalculatorApp, mountApp, parseCurve } from "../src/app.js";
import {
  FakeFetch,
  fixtures,
  flush,
  makeFakeFetch,
  select,
  submit,
  text,
  type,
} from "./helpers.js";

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById("app")!;
});

async function mountWith(fake: FakeFetch): Promise<CalculatorApp> {
  return mountApp(root, new ApiClient("", fake.fetchFn));
}

function submitButton(): HTMLButtonElement {
  return root.querySelector<HTMLButtonElement>('[data-role="submit"]')!;
}

describe("mounting", () => {
  it("loads presets and regions from the API", async () => {
    const fake = makeFakeFetch();
    await mountWith(fake);
    const presetOptions = root.querySelectorAll('[data-role="preset"] option');
    expect(presetOptions.length).toBe(fixtures.presets.length + 1);
    const regionSelect = root.querySelector<HTMLSelectElement>('[data-field="region_code"]')!;
    expect(regionSelect.value).toBe("WORLD");
    expect(fake.calls.map((c) => c.path).sort()).toEqual([
      "/v1/data/carbon-intensity",
      "/v1/data/processors",
      "/v1/presets",
    ]);
  });

  it("starts with submit disabled on the empty form", async () => {
    await mountWith(makeFakeFetch());
    expect(submitButton().disabled).toBe(true);
  });
});

describe("geant4 preset round-trip", () => {
  it("submitting displays exactly the API's numbers", async () => {
    const fake = makeFakeFetch();
    await mountWith(fake);
    select(root, '[data-role="preset"]', "geant4-dna");
    expect(submitButton().disabled).toBe(false);

    submit(root, "estimate-form");
    await flush();

    // request body matches the preset fixture field for field
    const call = fake.calls.find((c) => c.path === "/v1/estimate")!;
    expect(call.body).toEqual(
      fixtures.presets.find((p) => p.name === "geant4-dna")!.request,
    );

    // displayed values are the fixture payload under display rounding
    expect(text(root, "gco2e-single")).toBe("49,465");
    expect(text(root, "gco2e-scaled")).toBe("544,115");
    expect(text(root, "car-km-eu")).toBe("3,109");
    expect(text(root, "tree-months")).toBe("594");
    expect(text(root, "tree-years")).toBe("49");
    expect(text(root, "flights-ny-sf")).toBe("1.0");
  });
});

describe("no client-side model computation", () => {
  it("renders whatever numbers the API returns, even implausible ones", async () => {
    // a sentinel payload no energy model could produce from these inputs:
    // if the UI computed anything locally, these exact digits could not
    // appear on screen
    const sentinel = {
      ...fixtures.geant4_estimate,
      gco2e_scaled: 123456789.499,
      gco2e_single: 7.501,
      car_km_eu: 42.5,
      total_kwh: 3.14159,
      tree_months: 0,
    };
    const fake = makeFakeFetch((call) =>
      call.path === "/v1/estimate" ? { status: 200, body: sentinel } : null,
    );
    await mountWith(fake);
    select(root, '[data-role="preset"]', "geant4-dna");
    submit(root, "estimate-form");
    await flush();

    expect(fake.calls.filter((c) => c.path === "/v1/estimate").length).toBe(1);
    expect(text(root, "gco2e-scaled")).toBe("123,456,789");
    expect(text(root, "gco2e-single")).toBe("8");
    expect(text(root, "car-km-eu")).toBe("43");
    expect(text(root, "total-kwh")).toBe("3.14");
    expect(text(root, "tree-months")).toBe("0");
  });
});

describe("form validation in the DOM", () => {
  it("invalid fields block submission with field-level messages", async () => {
    const fake = makeFakeFetch();
    await mountWith(fake);
    select(root, '[data-role="preset"]', "geant4-dna");
    type(root, "runtime_hours", "not a number");

    expect(submitButton().disabled).toBe(true);
    const message = root.querySelector('[data-error-for="runtime_hours"]')!;
    expect(message.textContent).toBe("must be a number");

    submit(root, "estimate-form");
    await flush();
    expect(fake.calls.some((c) => c.path === "/v1/estimate")).toBe(false);
  });

  it("untouched empty fields stay quiet but submit stays disabled", async () => {
    await mountWith(makeFakeFetch());
    expect(submitButton().disabled).toBe(true);
    const message = root.querySelector('[data-error-for="runtime_hours"]')!;
    expect(message.textContent).toBe("");
  });

  it("server-side field errors appear next to the named field", async () => {
    const fake = makeFakeFetch((call) =>
      call.path === "/v1/estimate"
        ? {
            status: 400,
            body: {
              error: { code: "validation", field: "pue", message: "pue must be >= 1.0" },
            },
          }
        : null,
    );
    await mountWith(fake);
    select(root, '[data-role="preset"]', "geant4-dna");
    submit(root, "estimate-form");
    await flush();
    const message = root.querySelector('[data-error-for="pue"]')!;
    expect(message.textContent).toBe("pue must be >= 1.0");
  });
});

describe("stale responses", () => {
  it("a superseded estimate response is discarded", async () => {
    const slow = { ...fixtures.geant4_estimate, gco2e_scaled: 111 };
    let release: (() => void) | null = null;
    // wrap the default fake so the first estimate hangs until released
    // and then resolves with a recognisably different payload
    const baseFetch = makeFakeFetch().fetchFn;
    const gated: typeof fetch = async (input, init) => {
      const url = String(input);
      if (url.endsWith("/v1/estimate") && release === null) {
        await new Promise<void>((resolve) => {
          release = resolve;
        });
        return {
          ok: true,
          status: 200,
          json: async () => slow,
        } as Response;
      }
      return baseFetch(input, init);
    };

    await mountApp(root, new ApiClient("", gated));
    select(root, '[data-role="preset"]', "geant4-dna");

    submit(root, "estimate-form"); // slow request, gated
    await flush();
    submit(root, "estimate-form"); // fast request, resolves immediately
    await flush();
    expect(text(root, "gco2e-scaled")).toBe("544,115");

    release!(); // the stale response finally arrives…
    await flush();
    // …and is discarded
    expect(text(root, "gco2e-scaled")).toBe("544,115");
  });
});

describe("what-if panel", () => {
  it("compare shows the API's relative change verbatim", async () => {
    const fake = makeFakeFetch();
    await mountWith(fake);
    select(root, '[data-role="preset"]', "geant4-dna");
    select(root, '[data-scenario="a-region"]', "AU");
    select(root, '[data-scenario="b-region"]', "CH");
    submit(root, "compare-form");
    await flush();

    const call = fake.calls.find((c) => c.path === "/v1/compare")!;
    const body = call.body as { a: { region_code: string }; b: { region_code: string } };
    expect(body.a.region_code).toBe("AU");
    expect(body.b.region_code).toBe("CH");
    expect(text(root, "compare-change")).toBe("-97.8%");
  });

  it("sweep renders the chart with the optimum marked at 15 cores", async () => {
    const fake = makeFakeFetch();
    await mountWith(fake);
    select(root, '[data-role="preset"]', "geant4-dna");
    const curve = root.querySelector<HTMLTextAreaElement>('[data-role="sweep-curve"]')!;
    curve.value = "1, 60\n15, 3\n60, 1.5";
    curve.dispatchEvent(new Event("input", { bubbles: true }));

    submit(root, "sweep-form");
    await flush();

    expect(text(root, "sweep-optimal")).toBe("15");
    const marker = root.querySelector('circle[data-optimal="true"]')!;
    expect(marker.getAttribute("data-cores")).toBe("15");
    expect(root.querySelectorAll("circle").length).toBe(3);
  });

  it("rejects malformed curve rows before any request", async () => {
    const fake = makeFakeFetch();
    await mountWith(fake);
    select(root, '[data-role="preset"]', "geant4-dna");
    const curve = root.querySelector<HTMLTextAreaElement>('[data-role="sweep-curve"]')!;
    curve.value = "15, -3";
    curve.dispatchEvent(new Event("input", { bubbles: true }));

    const button = root.querySelector<HTMLButtonElement>('[data-role="sweep-submit"]')!;
    expect(button.disabled).toBe(true);
    expect(fake.calls.some((c) => c.path === "/v1/sweep")).toBe(false);
  });
});

describe("parseCurve", () => {
  it("parses comma-separated rows", () => {
    expect(parseCurve("15, 3.0\n60, 1.5").points).toEqual([
      { cores: 15, runtime_hours: 3 },
      { cores: 60, runtime_hours: 1.5 },
    ]);
  });

  it("flags the offending row", () => {
    const { points, error } = parseCurve("15, 3.0\nbogus");
    expect(points).toBeNull();
    expect(error).toContain("bogus");
  });
});
