/**
 * Single-page calculator: a workload form with live results, plus a
 * what-if panel for relocation comparisons and core-count sweeps.
 *
 * All numbers shown here come verbatim from /v1 responses; this module
 * only formats them. Each panel keeps a request sequence number so a
 * response that was superseded by newer input is silently discarded.
 */

import { ApiClient, ApiError, Preset, ReportPayload, SweepResponse } from "./api.js";
import {
  FieldName,
  FormState,
  PowerMode,
  applyPreset,
  emptyForm,
  setField,
  validateForm,
} from "./form.js";
import {
  fmtFlights,
  fmtGrams,
  fmtKm,
  fmtKwh,
  fmtPercent,
  fmtTreeMonths,
} from "./format.js";

const FORM_TEMPLATE = `
<section class="calculator">
  <h1>Compute carbon calculator</h1>
  <label>Preset
    <select data-role="preset">
      <option value="">— choose a preset —</option>
    </select>
  </label>
  <form data-role="estimate-form" novalidate>
    <fieldset>
      <legend>Workload</legend>
      <label>Runtime (hours)
        <input name="runtime_hours" data-field="runtime_hours" inputmode="decimal">
        <span class="field-error" data-error-for="runtime_hours"></span>
      </label>
      <label>Power specification
        <select data-role="power-mode">
          <option value="processor">catalog processor</option>
          <option value="custom">custom TDP</option>
          <option value="power">total power (kW)</option>
        </select>
      </label>
      <div data-mode-section="processor">
        <label>Processor
          <input name="processor_name" data-field="processor_name" list="processor-options">
          <datalist id="processor-options"></datalist>
          <span class="field-error" data-error-for="processor_name"></span>
        </label>
      </div>
      <div data-mode-section="custom" hidden>
        <label>TDP per unit (W)
          <input name="tdp_watts" data-field="tdp_watts" inputmode="decimal">
          <span class="field-error" data-error-for="tdp_watts"></span>
        </label>
        <label>Cores per unit
          <input name="unit_count" data-field="unit_count" inputmode="numeric">
          <span class="field-error" data-error-for="unit_count"></span>
        </label>
      </div>
      <div data-mode-section="power" hidden>
        <label>Total drawn power (kW)
          <input name="power_kw" data-field="power_kw" inputmode="decimal">
          <span class="field-error" data-error-for="power_kw"></span>
        </label>
      </div>
      <label>Cores
        <input name="cores" data-field="cores" inputmode="numeric">
        <span class="field-error" data-error-for="cores"></span>
      </label>
      <label>Core usage factor (0–1, blank = 1)
        <input name="usage_factor" data-field="usage_factor" inputmode="decimal">
        <span class="field-error" data-error-for="usage_factor"></span>
      </label>
      <label>Memory (GB)
        <input name="mem_gb" data-field="mem_gb" inputmode="decimal">
        <span class="field-error" data-error-for="mem_gb"></span>
      </label>
    </fieldset>
    <fieldset>
      <legend>Facility</legend>
      <label>Region
        <select name="region_code" data-field="region_code"></select>
        <span class="field-error" data-error-for="region_code"></span>
      </label>
      <label>PUE (blank = world average)
        <input name="pue" data-field="pue" inputmode="decimal">
        <span class="field-error" data-error-for="pue"></span>
      </label>
      <label>Times the job is run (PSF, blank = 1)
        <input name="psf" data-field="psf" inputmode="decimal">
        <span class="field-error" data-error-for="psf"></span>
      </label>
    </fieldset>
    <button type="submit" data-role="submit" disabled>Estimate</button>
    <p class="form-error" data-role="form-error" hidden></p>
  </form>
  <div data-role="result" hidden>
    <h2>Footprint</h2>
    <p><strong data-role="gco2e-scaled"></strong> gCO₂e
      (<span data-role="gco2e-single"></span> gCO₂e per run ×
       <span data-role="psf"></span>)</p>
    <h3>Energy</h3>
    <ul>
      <li>Cores: <span data-role="core-kwh"></span> kWh</li>
      <li>Memory: <span data-role="memory-kwh"></span> kWh</li>
      <li>Total (with facility overhead): <span data-role="total-kwh"></span> kWh</li>
    </ul>
    <h3>This is equivalent to…</h3>
    <ul>
      <li>Driving <span data-role="car-km-eu"></span> km (European car)
          or <span data-role="car-km-us"></span> km (US car)</li>
      <li><span data-role="flights-paris-london"></span> flights Paris–London,
          <span data-role="flights-ny-sf"></span> flights New York–San Francisco,
          <span data-role="flights-ny-melbourne"></span> flights New York–Melbourne</li>
      <li><span data-role="tree-months"></span> tree-months of CO₂ sequestration
          (~<span data-role="tree-years"></span> tree-years)</li>
    </ul>
    <p class="fineprint">Grid intensity: <span data-role="ci-used"></span> gCO₂e/kWh
       (<span data-role="ci-region"></span>) · data <span data-role="data-version"></span></p>
  </div>
</section>
<section class="what-if">
  <h2>What if?</h2>
  <form data-role="compare-form">
    <fieldset>
      <legend>Relocation / facility comparison (uses the workload above)</legend>
      <label>Scenario A region <select data-scenario="a-region"></select></label>
      <label>Scenario A PUE <input data-scenario="a-pue" inputmode="decimal"></label>
      <label>Scenario B region <select data-scenario="b-region"></select></label>
      <label>Scenario B PUE <input data-scenario="b-pue" inputmode="decimal"></label>
    </fieldset>
    <button type="submit" data-role="compare-submit" disabled>Compare</button>
  </form>
  <p data-role="compare-result" hidden>
    Scenario B emits <strong data-role="compare-change"></strong> relative to A
    (<span data-role="compare-a"></span> → <span data-role="compare-b"></span> gCO₂e,
     Δ <span data-role="compare-delta"></span> g).
  </p>
  <p class="form-error" data-role="compare-error" hidden></p>
  <form data-role="sweep-form">
    <fieldset>
      <legend>Core-count sweep (cores, runtime hours — one pair per line)</legend>
      <textarea data-role="sweep-curve" rows="4" placeholder="15, 12.0&#10;30, 7.0&#10;60, 4.5"></textarea>
    </fieldset>
    <button type="submit" data-role="sweep-submit" disabled>Sweep</button>
  </form>
  <div data-role="sweep-result" hidden>
    <p>Emission-optimal core count:
       <strong data-role="sweep-optimal"></strong></p>
    <svg data-role="sweep-chart" viewBox="0 0 400 220" width="400" height="220"
         role="img" aria-label="Emissions by core count"></svg>
  </div>
  <p class="form-error" data-role="sweep-error" hidden></p>
</section>
`;

function byRole<T extends Element = HTMLElement>(root: ParentNode, role: string): T {
  const el = root.querySelector(`[data-role="${role}"]`);
  if (!el) throw new Error(`missing element with data-role=${role}`);
  return el as T;
}

function setText(root: ParentNode, role: string, text: string): void {
  byRole(root, role).textContent = text;
}

interface CurveParse {
  points: { cores: number; runtime_hours: number }[] | null;
  error: string | null;
}

export function parseCurve(text: string): CurveParse {
  const points: { cores: number; runtime_hours: number }[] = [];
  const lines = text.split("\n").map((l) => l.trim()).filter((l) => l !== "");
  if (lines.length === 0) return { points: null, error: null };
  for (const line of lines) {
    const parts = line.split(",").map((p) => p.trim());
    const cores = Number(parts[0]);
    const runtime = Number(parts[1]);
    if (parts.length !== 2 || !Number.isInteger(cores) || cores < 1 ||
        !Number.isFinite(runtime) || runtime <= 0) {
      return { points: null, error: `bad curve row: "${line}"` };
    }
    points.push({ cores, runtime_hours: runtime });
  }
  return { points, error: null };
}

/** Build the cores-vs-gCO₂e SVG chart, marking the optimum point. */
export function renderSweepChart(svg: SVGElement, sweep: SweepResponse): void {
  const W = 400, H = 220, PAD = 36;
  const rows = sweep.rows;
  svg.innerHTML = "";
  if (rows.length === 0) return;
  const xs = rows.map((r) => r.cores);
  const ys = rows.map((r) => r.estimate.gco2e_scaled);
  const xMin = Math.min(...xs), xMax = Math.max(...xs);
  const yMax = Math.max(...ys, 1);
  const sx = (x: number) =>
    xMax === xMin ? W / 2 : PAD + ((x - xMin) / (xMax - xMin)) * (W - 2 * PAD);
  const sy = (y: number) => H - PAD - (y / yMax) * (H - 2 * PAD);
  const ns = "http://www.w3.org/2000/svg";

  const path = document.createElementNS(ns, "polyline");
  path.setAttribute("fill", "none");
  path.setAttribute("stroke", "#2a7");
  path.setAttribute("points", rows.map((r) => `${sx(r.cores)},${sy(r.estimate.gco2e_scaled)}`).join(" "));
  svg.appendChild(path);

  for (const row of rows) {
    const optimal = row.cores === sweep.optimal_core_count;
    const dot = document.createElementNS(ns, "circle");
    dot.setAttribute("cx", String(sx(row.cores)));
    dot.setAttribute("cy", String(sy(row.estimate.gco2e_scaled)));
    dot.setAttribute("r", optimal ? "6" : "3");
    dot.setAttribute("fill", optimal ? "#d33" : "#2a7");
    dot.setAttribute("data-cores", String(row.cores));
    if (optimal) dot.setAttribute("data-optimal", "true");
    svg.appendChild(dot);

    const label = document.createElementNS(ns, "text");
    label.setAttribute("x", String(sx(row.cores)));
    label.setAttribute("y", String(H - PAD + 16));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("font-size", "11");
    label.textContent = String(row.cores);
    svg.appendChild(label);
  }
}

export function renderResult(panel: HTMLElement, payload: ReportPayload): void {
  setText(panel, "gco2e-scaled", fmtGrams(payload.gco2e_scaled));
  setText(panel, "gco2e-single", fmtGrams(payload.gco2e_single));
  setText(panel, "psf", String(payload.psf));
  setText(panel, "core-kwh", fmtKwh(payload.core_kwh));
  setText(panel, "memory-kwh", fmtKwh(payload.memory_kwh));
  setText(panel, "total-kwh", fmtKwh(payload.total_kwh));
  setText(panel, "car-km-eu", fmtKm(payload.car_km_eu));
  setText(panel, "car-km-us", fmtKm(payload.car_km_us));
  setText(panel, "flights-paris-london", fmtFlights(payload.flights_paris_london));
  setText(panel, "flights-ny-sf", fmtFlights(payload.flights_ny_sf));
  setText(panel, "flights-ny-melbourne", fmtFlights(payload.flights_ny_melbourne));
  setText(panel, "tree-months", fmtTreeMonths(payload.tree_months));
  setText(panel, "tree-years", fmtTreeMonths(payload.tree_years));
  setText(panel, "ci-used", String(payload.gco2e_per_kwh));
  setText(panel, "ci-region", payload.region_code);
  setText(panel, "data-version", payload.data_version);
  panel.hidden = false;
}

export class CalculatorApp {
  private state: FormState = emptyForm();
  private presets: Preset[] = [];
  private estimateSeq = 0;
  private compareSeq = 0;
  private sweepSeq = 0;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {}

  async mount(): Promise<void> {
    this.root.innerHTML = FORM_TEMPLATE;
    this.wireForm();
    this.wireWhatIf();
    await this.loadCatalogs();
    this.refresh();
  }

  get formState(): FormState {
    return this.state;
  }

  private async loadCatalogs(): Promise<void> {
    const [presets, regions, processors] = await Promise.all([
      this.client.presets(),
      this.client.regions(),
      this.client.processors(),
    ]);
    this.presets = presets;

    const presetSelect = byRole<HTMLSelectElement>(this.root, "preset");
    for (const preset of presets) {
      const opt = document.createElement("option");
      opt.value = preset.name;
      opt.textContent = `${preset.name} — ${preset.description}`;
      presetSelect.appendChild(opt);
    }

    const regionSelects = [
      this.root.querySelector<HTMLSelectElement>('[data-field="region_code"]')!,
      this.root.querySelector<HTMLSelectElement>('[data-scenario="a-region"]')!,
      this.root.querySelector<HTMLSelectElement>('[data-scenario="b-region"]')!,
    ];
    for (const select of regionSelects) {
      for (const region of regions) {
        const opt = document.createElement("option");
        opt.value = region.region_code;
        opt.textContent = `${region.region_name} (${region.gco2e_per_kwh} g/kWh)`;
        select.appendChild(opt);
      }
      select.value = "WORLD";
    }

    const datalist = this.root.querySelector("#processor-options")!;
    for (const proc of processors) {
      const opt = document.createElement("option");
      opt.value = proc.name;
      datalist.appendChild(opt);
    }
  }

  private wireForm(): void {
    const form = byRole<HTMLFormElement>(this.root, "estimate-form");

    for (const input of form.querySelectorAll<HTMLInputElement | HTMLSelectElement>("[data-field]")) {
      input.addEventListener("input", () => {
        this.state = setField(this.state, input.dataset.field as FieldName, input.value);
        this.refresh();
      });
      input.addEventListener("change", () => {
        this.state = setField(this.state, input.dataset.field as FieldName, input.value);
        this.refresh();
      });
    }

    const modeSelect = byRole<HTMLSelectElement>(this.root, "power-mode");
    modeSelect.addEventListener("change", () => {
      this.state = { ...this.state, powerMode: modeSelect.value as PowerMode, presetName: null };
      this.refresh();
    });

    const presetSelect = byRole<HTMLSelectElement>(this.root, "preset");
    presetSelect.addEventListener("change", () => {
      const preset = this.presets.find((p) => p.name === presetSelect.value);
      if (preset) {
        this.state = applyPreset(this.state, preset);
        this.refresh();
      }
    });

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitEstimate();
    });
  }

  private wireWhatIf(): void {
    const compareForm = byRole<HTMLFormElement>(this.root, "compare-form");
    compareForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitCompare();
    });
    const sweepForm = byRole<HTMLFormElement>(this.root, "sweep-form");
    sweepForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitSweep();
    });
    byRole<HTMLTextAreaElement>(this.root, "sweep-curve").addEventListener("input", () => {
      this.refresh();
    });
  }

  /** Re-derive every enabled/disabled state and field error from the form state. */
  private refresh(): void {
    const { values, powerMode, presetName } = this.state;
    for (const input of this.root.querySelectorAll<HTMLInputElement | HTMLSelectElement>("[data-field]")) {
      const field = input.dataset.field as FieldName;
      if (input.value !== values[field]) input.value = values[field];
    }
    byRole<HTMLSelectElement>(this.root, "power-mode").value = powerMode;
    byRole<HTMLSelectElement>(this.root, "preset").value = presetName ?? "";

    for (const section of this.root.querySelectorAll<HTMLElement>("[data-mode-section]")) {
      section.hidden = section.dataset.modeSection !== powerMode;
    }

    const { request, errors } = validateForm(this.state);
    for (const span of this.root.querySelectorAll<HTMLElement>("[data-error-for]")) {
      const field = span.dataset.errorFor as FieldName;
      const visibleMode =
        (field !== "processor_name" || powerMode === "processor") &&
        ((field !== "tdp_watts" && field !== "unit_count") || powerMode === "custom") &&
        (field !== "power_kw" || powerMode === "power") &&
        (field !== "cores" || powerMode !== "power");
      // show errors only for fields the user has touched, so a blank form
      // starts quiet (but still disables submit)
      const show = visibleMode && errors[field] !== undefined &&
        (this.state.dirty[field] === true || presetName !== null);
      span.textContent = show ? errors[field]! : "";
    }
    byRole<HTMLButtonElement>(this.root, "submit").disabled = request === null;

    const compareReady = request !== null &&
      this.scenarioSetting("a") !== null && this.scenarioSetting("b") !== null;
    byRole<HTMLButtonElement>(this.root, "compare-submit").disabled = !compareReady;

    const curveText = byRole<HTMLTextAreaElement>(this.root, "sweep-curve").value;
    const curve = parseCurve(curveText);
    byRole<HTMLButtonElement>(this.root, "sweep-submit").disabled =
      request === null || curve.points === null;
    const sweepError = byRole(this.root, "sweep-error");
    sweepError.hidden = curve.error === null;
    if (curve.error !== null) sweepError.textContent = curve.error;
  }

  private scenarioSetting(which: "a" | "b"): { region: string; pue: number | null } | null {
    const region = this.root.querySelector<HTMLSelectElement>(
      `[data-scenario="${which}-region"]`,
    )!.value;
    const pueRaw = this.root.querySelector<HTMLInputElement>(
      `[data-scenario="${which}-pue"]`,
    )!.value.trim();
    if (region === "") return null;
    if (pueRaw === "") return { region, pue: null };
    const pue = Number(pueRaw);
    if (!Number.isFinite(pue) || pue < 1) return null;
    return { region, pue };
  }

  private showError(role: string, err: unknown): void {
    const box = byRole(this.root, role);
    if (err instanceof ApiError && err.detail.field) {
      // inline, next to the field the server named
      const span = this.root.querySelector<HTMLElement>(
        `[data-error-for="${err.detail.field}"]`,
      );
      if (span) {
        span.textContent = err.detail.message;
        box.hidden = true;
        return;
      }
    }
    box.textContent = err instanceof Error ? err.message : String(err);
    box.hidden = false;
  }

  private async submitEstimate(): Promise<void> {
    const { request } = validateForm(this.state);
    if (request === null) return;
    const seq = ++this.estimateSeq;
    byRole(this.root, "form-error").hidden = true;
    try {
      const payload = await this.client.estimate(request);
      if (seq !== this.estimateSeq) return; // superseded by newer input
      renderResult(byRole(this.root, "result"), payload);
    } catch (err) {
      if (seq !== this.estimateSeq) return;
      this.showError("form-error", err);
    }
  }

  private async submitCompare(): Promise<void> {
    const { request } = validateForm(this.state);
    const a = this.scenarioSetting("a");
    const b = this.scenarioSetting("b");
    if (request === null || a === null || b === null) return;
    const seq = ++this.compareSeq;
    byRole(this.root, "compare-error").hidden = true;
    // scenario overrides the region always, and the PUE only when given
    const withScenario = (s: { region: string; pue: number | null }) => {
      const req = { ...request, region_code: s.region };
      if (s.pue !== null) req.pue = s.pue;
      return req;
    };
    try {
      const cmp = await this.client.compare(withScenario(a), withScenario(b));
      if (seq !== this.compareSeq) return;
      setText(this.root, "compare-change", fmtPercent(cmp.relative_change));
      setText(this.root, "compare-a", fmtGrams(cmp.a.gco2e_scaled));
      setText(this.root, "compare-b", fmtGrams(cmp.b.gco2e_scaled));
      setText(this.root, "compare-delta", fmtGrams(cmp.absolute_delta_g));
      byRole(this.root, "compare-result").hidden = false;
    } catch (err) {
      if (seq !== this.compareSeq) return;
      this.showError("compare-error", err);
    }
  }

  private async submitSweep(): Promise<void> {
    const { request } = validateForm(this.state);
    const curve = parseCurve(byRole<HTMLTextAreaElement>(this.root, "sweep-curve").value);
    if (request === null || curve.points === null) return;
    const seq = ++this.sweepSeq;
    byRole(this.root, "sweep-error").hidden = true;
    try {
      const sweep = await this.client.sweep(request, curve.points);
      if (seq !== this.sweepSeq) return;
      setText(this.root, "sweep-optimal", String(sweep.optimal_core_count));
      renderSweepChart(byRole<SVGElement>(this.root, "sweep-chart"), sweep);
      byRole(this.root, "sweep-result").hidden = false;
    } catch (err) {
      if (seq !== this.sweepSeq) return;
      this.showError("sweep-error", err);
    }
  }
}

export async function mountApp(root: HTMLElement, client: ApiClient): Promise<CalculatorApp> {
  const app = new CalculatorApp(root, client);
  await app.mount();
  return app;
}
