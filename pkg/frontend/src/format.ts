/**
 * Display rounding, mirroring the service's text renderer: gCO2e, km and
 * tree-months to nearest integer (half away from zero) with thousands
 * separators; flights to one decimal; kWh to two decimals.
 *
 * These functions format API values; they never derive new quantities.
 */

export function roundHalfAway(value: number, decimals = 0): number {
  const factor = 10 ** decimals;
  return (Math.sign(value) * Math.floor(Math.abs(value) * factor + 0.5)) / factor;
}

function withSeparators(value: number, decimals: number): string {
  return value.toLocaleString("en-US", {
    minimumFractionDigits: decimals,
    maximumFractionDigits: decimals,
  });
}

export function fmtGrams(value: number): string {
  return withSeparators(roundHalfAway(value), 0);
}

export function fmtKm(value: number): string {
  return withSeparators(roundHalfAway(value), 0);
}

export function fmtTreeMonths(value: number): string {
  return withSeparators(roundHalfAway(value), 0);
}

export function fmtFlights(value: number): string {
  return withSeparators(roundHalfAway(value, 1), 1);
}

export function fmtKwh(value: number): string {
  return withSeparators(roundHalfAway(value, 2), 2);
}

export function fmtPercent(value: number): string {
  const pct = roundHalfAway(value * 100, 1);
  return `${pct >= 0 ? "+" : ""}${pct.toFixed(1)}%`;
}
