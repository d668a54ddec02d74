/**
 * Rating form model: an overall 1-10 integer plus optional criterion
 * sub-scores, clamped client-side so out-of-range values never reach the
 * network.
 */

import type { RatingBody } from './api.js';

export const SCALE_MIN = 1;
export const SCALE_MAX = 10;
export const CRITERIA = ['coherence', 'informativeness', 'relevance'] as const;
export type Criterion = (typeof CRITERIA)[number];

export interface FormState {
  overall: number | null;
  criteria: Partial<Record<Criterion, number>>;
}

export function emptyForm(): FormState {
  return { overall: null, criteria: {} };
}

export function clampScale(value: number): number {
  const rounded = Math.round(value);
  return Math.min(SCALE_MAX, Math.max(SCALE_MIN, rounded));
}

export function setOverall(form: FormState, value: number): FormState {
  return { ...form, overall: clampScale(value) };
}

export function setCriterion(form: FormState, name: Criterion, value: number | null): FormState {
  const criteria = { ...form.criteria };
  if (value === null) {
    delete criteria[name];
  } else {
    criteria[name] = clampScale(value);
  }
  return { ...form, criteria };
}

/** Submit stays disabled until an overall rating is chosen. */
export function canSubmit(form: FormState): boolean {
  return form.overall !== null;
}

export function toRatingBody(form: FormState, taskId: string, raterId: string): RatingBody {
  if (form.overall === null) {
    throw new Error('overall rating not chosen');
  }
  const body: RatingBody = { task_id: taskId, rater_id: raterId, overall: form.overall };
  if (Object.keys(form.criteria).length > 0) {
    body.criteria = { ...form.criteria };
  }
  return body;
}
