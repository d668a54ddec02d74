/**
 * Pure HTML rendering of the flow state.
 *
 * Arabic content blocks carry dir="rtl" lang="ar"; the expert reference
 * is collapsible next to the original/candidate pair.  Rendering never
 * sees a true model name -- only the blind label the service assigned.
 */

import type { FlowState } from './flow.js';
import { CRITERIA, SCALE_MAX, SCALE_MIN, canSubmit } from './form.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function scaleInput(name: string, value: number | null, required: boolean): string {
  const val = value === null ? '' : String(value);
  return (
    `<label class="scale">${name}` +
    `<input type="number" name="${name}" min="${SCALE_MIN}" max="${SCALE_MAX}" step="1"` +
    ` value="${val}"${required ? ' required' : ''}></label>`
  );
}

function progressLine(state: FlowState): string {
  if (!state.progress) return '';
  const current = Math.min(state.progress.rated + 1, state.progress.task_count);
  return `<p class="progress">Task ${current} of ${state.progress.task_count}</p>`;
}

export function renderApp(state: FlowState): string {
  const notice = state.notice ? `<div class="notice">${escapeHtml(state.notice)}</div>` : '';
  switch (state.phase) {
    case 'loading':
      return `<main>${notice}<p>Loading…</p></main>`;
    case 'error':
      return (
        `<main>${notice}` +
        `<div class="banner error">Cannot reach the rating service. Nothing was lost.</div>` +
        `<button data-action="retry">Retry</button></main>`
      );
    case 'done':
      return (
        `<main>${notice}<div class="banner done">All tasks rated - thank you.` +
        ` (${state.progress?.rated ?? 0} of ${state.progress?.task_count ?? 0})</div></main>`
      );
    case 'rating':
      break;
  }
  const task = state.task!;
  const fieldError = state.fieldError
    ? `<div class="banner error" data-role="field-error">${escapeHtml(state.fieldError)}</div>`
    : '';
  return `<main>
${notice}${progressLine(state)}
<h2>${escapeHtml(task.blind_label)}</h2>
<section class="texts">
  <article><h3>Original section</h3>
    <div class="text" dir="rtl" lang="ar">${escapeHtml(task.original_text)}</div></article>
  <article><h3>Candidate summary</h3>
    <div class="text" dir="rtl" lang="ar">${escapeHtml(task.candidate_text)}</div></article>
</section>
<details class="reference"><summary>Expert reference</summary>
  <div class="text" dir="rtl" lang="ar">${escapeHtml(task.expert_summary)}</div></details>
<form data-role="rating-form">
  ${scaleInput('overall', state.form.overall, true)}
  <fieldset><legend>Optional criteria</legend>
    ${CRITERIA.map((c) => scaleInput(c, state.form.criteria[c] ?? null, false)).join('\n    ')}
  </fieldset>
  ${fieldError}
  <button type="submit" data-action="submit"${canSubmit(state.form) ? '' : ' disabled'}>Submit rating</button>
</form>
</main>`;
}
