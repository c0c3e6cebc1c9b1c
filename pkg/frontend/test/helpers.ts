/**
 * Test doubles: a fake fetch serving captured API fixtures, recording
 * every request so tests can prove which numbers came from the server.
 */

import rawFixtures from "./fixtures.json";

export const fixtures = rawFixtures;

export interface RecordedCall {
  path: string;
  method: string;
  body: unknown;
}

type Responder = (call: RecordedCall) => { status: number; body: unknown } | null;

export interface FakeFetch {
  fetchFn: typeof fetch;
  calls: RecordedCall[];
}

export function makeFakeFetch(override?: Responder): FakeFetch {
  const calls: RecordedCall[] = [];
  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const path = url.replace(/^https?:\/\/[^/]*/, "");
    const call: RecordedCall = {
      path,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : null,
    };
    calls.push(call);

    let status = 200;
    let body: unknown;
    const custom = override?.(call);
    if (custom) {
      ({ status, body } = custom);
    } else if (path === "/v1/presets") {
      body = fixtures.presets;
    } else if (path === "/v1/data/carbon-intensity") {
      body = fixtures.regions;
    } else if (path === "/v1/data/processors") {
      body = fixtures.processors;
    } else if (path === "/v1/estimate") {
      body = fixtures.geant4_estimate;
    } else if (path === "/v1/sweep") {
      body = fixtures.sweep_three_point;
    } else if (path === "/v1/compare") {
      body = fixtures.compare_au_ch;
    } else {
      status = 404;
      body = { error: { code: "not_found", message: `no route ${path}` } };
    }
    return {
      ok: status < 400,
      status,
      json: async () => body,
    } as Response;
  }) as typeof fetch;
  return { fetchFn, calls };
}

/** Set an input's value the way a user would, firing the input event. */
export function type(root: HTMLElement, field: string, value: string): void {
  const el = root.querySelector<HTMLInputElement | HTMLSelectElement>(
    `[data-field="${field}"]`,
  );
  if (!el) throw new Error(`no input for field ${field}`);
  el.value = value;
  el.dispatchEvent(new Event("input", { bubbles: true }));
}

export function select(root: HTMLElement, selector: string, value: string): void {
  const el = root.querySelector<HTMLSelectElement>(selector);
  if (!el) throw new Error(`no select ${selector}`);
  el.value = value;
  el.dispatchEvent(new Event("change", { bubbles: true }));
}

export function text(root: HTMLElement, role: string): string {
  const el = root.querySelector(`[data-role="${role}"]`);
  if (!el) throw new Error(`no element with data-role ${role}`);
  return el.textContent ?? "";
}

export function submit(root: HTMLElement, formRole: string): void {
  const form = root.querySelector<HTMLFormElement>(`[data-role="${formRole}"]`);
  if (!form) throw new Error(`no form ${formRole}`);
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

/** Let queued promise callbacks (fetch responses) run. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
