// Display formatting for numbers received from the server. Weights show
// 2 decimals, risk coefficients 4 (trailing zeros trimmed), probabilities
// as-is. Formatting only: no arithmetic beyond rounding for display.

export function formatWeight(weight: number): string {
  return weight.toFixed(2);
}

export function formatRisk(coefficient: number): string {
  const fixed = coefficient.toFixed(4);
  const trimmed = fixed.replace(/0+$/, "").replace(/\.$/, "");
  return trimmed === "" ? "0" : trimmed;
}

export function formatRiskCell(coefficient: number, value: number | null): string {
  const coeff = `${formatRisk(coefficient)} × C`;
  if (value === null) return coeff;
  return `${coeff} = ${value.toLocaleString("en-US", {
    minimumFractionDigits: 2,
    maximumFractionDigits: 2,
  })}`;
}

export function formatProbability(probability: number): string {
  return String(probability);
}

export function pathArrow(vertices: readonly string[]): string {
  return vertices.join(" → ");
}
