/**
 * Calculator form state: raw string inputs, per-field dirty flags, and
 * syntactic validation. Semantic validation (catalog lookups, invariant
 * checks) is the server's single source of truth; the form only blocks
 * requests that could never be valid.
 */

import type { EstimateRequest, Preset } from "./api.js";

export type PowerMode = "processor" | "custom" | "power";

export const FIELD_NAMES = [
  "runtime_hours",
  "cores",
  "processor_name",
  "tdp_watts",
  "unit_count",
  "power_kw",
  "usage_factor",
  "mem_gb",
  "region_code",
  "pue",
  "psf",
] as const;

export type FieldName = (typeof FIELD_NAMES)[number];

export type FormValues = Record<FieldName, string>;
export type FieldErrors = Partial<Record<FieldName, string>>;

export interface FormState {
  values: FormValues;
  dirty: Partial<Record<FieldName, boolean>>;
  powerMode: PowerMode;
  presetName: string | null;
}

export function emptyForm(): FormState {
  const values = {} as FormValues;
  for (const name of FIELD_NAMES) values[name] = "";
  values.region_code = "WORLD";
  return { values, dirty: {}, powerMode: "processor", presetName: null };
}

export function setField(state: FormState, field: FieldName, value: string): FormState {
  return {
    ...state,
    values: { ...state.values, [field]: value },
    dirty: { ...state.dirty, [field]: true },
    presetName: null,
  };
}

export function applyPreset(state: FormState, preset: Preset): FormState {
  const next = emptyForm();
  const req = preset.request;
  const set = (field: FieldName, v: number | string | undefined) => {
    if (v !== undefined && v !== null) next.values[field] = String(v);
  };
  set("runtime_hours", req.runtime_hours);
  set("cores", req.cores);
  set("processor_name", req.processor_name);
  set("tdp_watts", req.tdp_watts);
  set("unit_count", req.unit_count);
  set("power_kw", req.power_kw);
  set("usage_factor", req.usage_factor);
  set("mem_gb", req.mem_gb);
  set("region_code", req.region_code ?? "WORLD");
  set("pue", req.pue);
  set("psf", req.psf);
  next.powerMode =
    req.power_kw !== undefined ? "power" :
    req.tdp_watts !== undefined ? "custom" : "processor";
  return { ...next, presetName: preset.name };
}

function parseNumber(raw: string): number | null {
  if (raw.trim() === "") return null;
  const value = Number(raw);
  return Number.isFinite(value) ? value : NaN;
}

interface NumberRule {
  field: FieldName;
  required?: boolean;
  min?: number;
  max?: number;
  integer?: boolean;
}

function checkNumber(values: FormValues, errors: FieldErrors, rule: NumberRule): number | null {
  const value = parseNumber(values[rule.field]);
  if (value === null) {
    if (rule.required) errors[rule.field] = "required";
    return null;
  }
  if (Number.isNaN(value)) {
    errors[rule.field] = "must be a number";
    return null;
  }
  if (rule.integer && !Number.isInteger(value)) {
    errors[rule.field] = "must be a whole number";
    return null;
  }
  if (rule.min !== undefined && value < rule.min) {
    errors[rule.field] = `must be at least ${rule.min}`;
    return null;
  }
  if (rule.max !== undefined && value > rule.max) {
    errors[rule.field] = `must be at most ${rule.max}`;
    return null;
  }
  return value;
}

export interface ValidationResult {
  request: EstimateRequest | null;
  errors: FieldErrors;
}

/**
 * Validate the form and, when clean, build the request body field for
 * field. Blank optionals are omitted so the server applies its defaults
 * (full core usage, world-average region).
 */
export function validateForm(state: FormState): ValidationResult {
  const { values, powerMode } = state;
  const errors: FieldErrors = {};
  const req: EstimateRequest = { runtime_hours: 0 };

  const runtime = checkNumber(values, errors, {
    field: "runtime_hours", required: true, min: 0,
  });
  if (runtime !== null) req.runtime_hours = runtime;

  if (powerMode === "processor") {
    if (values.processor_name.trim() === "") {
      errors.processor_name = "required";
    } else {
      req.processor_name = values.processor_name.trim();
    }
  } else if (powerMode === "custom") {
    const tdp = checkNumber(values, errors, { field: "tdp_watts", required: true, min: 0 });
    const units = checkNumber(values, errors, {
      field: "unit_count", required: true, min: 1, integer: true,
    });
    if (tdp !== null) req.tdp_watts = tdp;
    if (units !== null) req.unit_count = units;
  } else {
    const power = checkNumber(values, errors, { field: "power_kw", required: true, min: 0 });
    if (power !== null) req.power_kw = power;
  }

  if (powerMode !== "power") {
    const cores = checkNumber(values, errors, {
      field: "cores", required: true, min: 0, integer: true,
    });
    if (cores !== null) req.cores = cores;
  }

  const usage = checkNumber(values, errors, { field: "usage_factor", min: 0, max: 1 });
  if (usage !== null) req.usage_factor = usage;
  const mem = checkNumber(values, errors, { field: "mem_gb", min: 0 });
  if (mem !== null) req.mem_gb = mem;
  const pue = checkNumber(values, errors, { field: "pue", min: 1 });
  if (pue !== null) req.pue = pue;
  const psf = checkNumber(values, errors, { field: "psf", min: 1 });
  if (psf !== null) req.psf = psf;
  if (values.region_code.trim() !== "") req.region_code = values.region_code.trim();

  return {
    request: Object.keys(errors).length === 0 ? req : null,
    errors,
  };
}

export function canSubmit(state: FormState): boolean {
  return validateForm(state).request !== null;
}
