// Display formatting mirroring the CLI report: three decimals rounded
// half away from zero, leading zero stripped, p under .0005 shown as
// ".000". The API serves full precision; rounding stays client-side.

export function round3(x: number): number {
  const sign = x < 0 ? -1 : 1;
  // EPSILON nudge keeps values like 2.0005 from landing just below the
  // half after binary scaling
  return (sign * Math.round((Math.abs(x) + Number.EPSILON) * 1000)) / 1000;
}

export function formatNumber(x: number): string {
  const fixed = round3(x).toFixed(3);
  return fixed.replace(/^(-?)0\./, "$1.");
}

export function formatSig(p: number): string {
  if (p < 0.0005) {
    return ".000";
  }
  return formatNumber(p);
}

export function formatR(r: number, p: number): string {
  const stars = p < 0.01 ? "**" : "";
  return formatNumber(r) + stars;
}

export const CORRELATION_FOOTNOTE =
  "Correlation is significant at the 0.01 level (2-tailed).";
