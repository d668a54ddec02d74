/**
 * Browser bootstrap: wires the api client, flow controller, and renderer
 * to the document.  The rater id lives in memory for the tab's lifetime;
 * everything else is server-side.
 */

import { ApiClient } from './api.js';
import { SessionFlow } from './flow.js';
import { CRITERIA, type Criterion, emptyForm, setCriterion, setOverall } from './form.js';
import { renderApp } from './view.js';

const root = document.getElementById('app')!;

function askRaterId(): string {
  let raterId = '';
  while (!raterId) {
    raterId = (window.prompt('Rater id:') ?? '').trim();
  }
  return raterId;
}

function readForm(formEl: HTMLFormElement) {
  let form = emptyForm();
  const overall = (formEl.elements.namedItem('overall') as HTMLInputElement).value;
  if (overall !== '') {
    form = setOverall(form, Number(overall));
  }
  for (const name of CRITERIA) {
    const value = (formEl.elements.namedItem(name) as HTMLInputElement).value;
    if (value !== '') {
      form = setCriterion(form, name as Criterion, Number(value));
    }
  }
  return form;
}

function start(): void {
  const raterId = askRaterId();
  const api = new ApiClient('');
  const flow = new SessionFlow(api, raterId, (state) => {
    root.innerHTML = renderApp(state);
  });

  let submitting = false;
  root.addEventListener('input', (event) => {
    const formEl = (event.target as HTMLElement).closest('form[data-role="rating-form"]');
    if (formEl) {
      flow.setForm(readForm(formEl as HTMLFormElement));
    }
  });
  root.addEventListener('click', async (event) => {
    const target = event.target as HTMLElement;
    if (target.matches('[data-action="retry"]')) {
      await flow.retry();
    }
  });
  root.addEventListener('submit', async (event) => {
    event.preventDefault();
    if (submitting) return; // double-click guard; the server also rejects
    submitting = true;
    try {
      await flow.submit();
    } finally {
      submitting = false;
    }
  });

  void flow.start();
}

start();
