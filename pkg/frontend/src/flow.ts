/**
 * Session flow: fetch the next unrated task, submit ratings, advance.
 *
 * The server is the source of truth; this controller holds no state a
 * refresh could lose.  Network failures surface as a retry phase with the
 * in-progress form preserved.
 */

import type { ApiClient, Progress, TaskPayload } from './api.js';
import { emptyForm, type FormState, canSubmit, toRatingBody } from './form.js';

export type Phase = 'loading' | 'rating' | 'done' | 'error';

export interface FlowState {
  phase: Phase;
  task: TaskPayload | null;
  progress: Progress | null;
  form: FormState;
  /** transient banner, e.g. a duplicate notice */
  notice: string | null;
  /** which field the service rejected, when it did */
  fieldError: string | null;
}

export class SessionFlow {
  state: FlowState = {
    phase: 'loading',
    task: null,
    progress: null,
    form: emptyForm(),
    notice: null,
    fieldError: null,
  };

  constructor(
    private readonly api: ApiClient,
    private readonly raterId: string,
    private readonly onChange?: (state: FlowState) => void,
  ) {}

  private update(partial: Partial<FlowState>): void {
    this.state = { ...this.state, ...partial };
    this.onChange?.(this.state);
  }

  async start(): Promise<FlowState> {
    return this.advance();
  }

  /** Load the next unrated task, or the completion screen. */
  private async advance(notice: string | null = null): Promise<FlowState> {
    try {
      const next = await this.api.nextTask(this.raterId);
      if (next.done) {
        this.update({ phase: 'done', task: null, progress: next.progress, notice, fieldError: null });
      } else {
        this.update({
          phase: 'rating',
          task: next.task,
          progress: next.progress,
          form: emptyForm(),
          notice,
          fieldError: null,
        });
      }
    } catch (err) {
      // form state is preserved for retry
      this.update({ phase: 'error', notice: String(err) });
    }
    return this.state;
  }

  setForm(form: FormState): void {
    this.update({ form });
  }

  async submit(): Promise<FlowState> {
    const { task, form } = this.state;
    if (!task || !canSubmit(form)) {
      return this.state;
    }
    let outcome;
    try {
      outcome = await this.api.submitRating(toRatingBody(form, task.task_id, this.raterId));
    } catch (err) {
      this.update({ phase: 'error', notice: String(err) });
      return this.state;
    }
    switch (outcome.status) {
      case 'accepted':
        return this.advance();
      case 'duplicate':
        return this.advance('This task was already rated; moving on.');
      case 'invalid':
        this.update({ fieldError: outcome.detail ?? 'value out of range' });
        return this.state;
      case 'unknown_task':
        return this.advance('That task no longer exists; moving on.');
    }
  }

  async retry(): Promise<FlowState> {
    return this.advance();
  }
}
