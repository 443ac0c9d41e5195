// Slicer state and its pure mapping onto request filters. The same
// state always yields the same filter list, in dimension insertion
// order, so request generation is deterministic.

import type { CubeDimension } from "./api.js";

/** dimension -> selected level; a missing key means "no filter". */
export type SlicerState = Readonly<Record<string, string>>;

export const EMPTY_STATE: SlicerState = Object.freeze({});

export function select(
  state: SlicerState,
  dimensions: CubeDimension[],
  dimension: string,
  level: string,
): SlicerState {
  const dim = dimensions.find((d) => d.name === dimension);
  if (!dim) {
    throw new Error(`unknown dimension ${dimension}`);
  }
  if (!dim.levels.includes(level)) {
    throw new Error(`dimension ${dimension} has no level ${level}`);
  }
  return Object.freeze({ ...state, [dimension]: level });
}

export function clearSelection(state: SlicerState, dimension: string): SlicerState {
  const next: Record<string, string> = { ...state };
  delete next[dimension];
  return Object.freeze(next);
}

export function clearAll(): SlicerState {
  return EMPTY_STATE;
}

/** The dice filters a state implies; empty state means no filtering. */
export function slicerFilters(state: SlicerState): [string, string][] {
  return Object.entries(state);
}
