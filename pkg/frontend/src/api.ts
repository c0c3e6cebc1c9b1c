/**
 * Typed client for the greencalc /v1 service.
 *
 * Every number the UI shows originates from these responses; the client
 * never computes the emissions model locally.
 */

export interface EstimateRequest {
  runtime_hours: number;
  cores?: number;
  processor_name?: string;
  tdp_watts?: number;
  unit_count?: number;
  power_kw?: number;
  usage_factor?: number;
  mem_gb?: number;
  region_code?: string;
  pue?: number;
  psf?: number;
}

export interface ReportPayload {
  request: Record<string, unknown>;
  core_kwh: number;
  memory_kwh: number;
  it_kwh: number;
  total_kwh: number;
  gco2e_single: number;
  psf: number;
  gco2e_scaled: number;
  car_km_eu: number;
  car_km_us: number;
  flights_paris_london: number;
  flights_ny_sf: number;
  flights_ny_melbourne: number;
  tree_months: number;
  tree_years: number;
  region_code: string;
  gco2e_per_kwh: number;
  data_version: string;
}

export interface CompareResponse {
  a: ReportPayload;
  b: ReportPayload;
  absolute_delta_g: number;
  relative_change: number;
}

export interface SweepRow {
  cores: number;
  runtime_hours: number;
  estimate: ReportPayload;
}

export interface SweepResponse {
  rows: SweepRow[];
  optimal_core_count: number;
}

export interface Preset {
  name: string;
  description: string;
  request: EstimateRequest;
}

export interface RegionInfo {
  region_code: string;
  region_name: string;
  gco2e_per_kwh: number;
  year: number;
  source: string;
}

export interface ApiFieldError {
  code: string;
  message: string;
  field?: string;
  suggestions?: string[];
}

export class ApiError extends Error {
  readonly detail: ApiFieldError;
  constructor(detail: ApiFieldError) {
    super(detail.message);
    this.detail = detail;
  }
}

type FetchFn = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchFn = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await resp.json();
    if (!resp.ok) {
      const detail: ApiFieldError = body?.error ?? {
        code: "http_error",
        message: `request failed with status ${resp.status}`,
      };
      throw new ApiError(detail);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  estimate(req: EstimateRequest): Promise<ReportPayload> {
    return this.post("/v1/estimate", req);
  }

  compare(a: EstimateRequest, b: EstimateRequest): Promise<CompareResponse> {
    return this.post("/v1/compare", { a, b });
  }

  sweep(
    base: EstimateRequest,
    curve: { cores: number; runtime_hours: number }[],
  ): Promise<SweepResponse> {
    return this.post("/v1/sweep", { base, curve });
  }

  presets(): Promise<Preset[]> {
    return this.request("/v1/presets");
  }

  regions(): Promise<RegionInfo[]> {
    return this.request("/v1/data/carbon-intensity");
  }

  processors(): Promise<{ name: string }[]> {
    return this.request("/v1/data/processors");
  }
}
