// Polling loop: one GET /pending per second, refreshing the view when the
// question id or session status changes. The UI holds no learning state of
// its own, so refreshing the page and re-polling never disturbs the
// learner.

import type { SessionApi } from './api.js'
import type { SessionState, SessionView } from './types.js'

export interface PollCallbacks {
  onView: (view: SessionView) => void
  onError: (message: string) => void
}

const TERMINAL: ReadonlySet<string> = new Set(['done', 'closed', 'error'])

export class SessionPoller {
  private lastQuestionId: number | null = null
  private lastStatus: string | null = null
  private stopped = false

  constructor(
    private readonly api: SessionApi,
    private readonly sessionId: string,
    private readonly callbacks: PollCallbacks,
    private readonly intervalMs = 1000,
  ) {}

  stop(): void {
    this.stopped = true
  }

  /** One poll step; returns false once the session reached a terminal state. */
  async step(): Promise<boolean> {
    const pending = await this.api.getPending(this.sessionId)
    const questionId = pending.question?.id ?? null
    const changed =
      pending.status !== this.lastStatus || questionId !== this.lastQuestionId
    if (changed) {
      this.lastStatus = pending.status
      this.lastQuestionId = questionId
      const state: SessionState = await this.api.getState(this.sessionId)
      this.callbacks.onView({
        sessionId: this.sessionId,
        status: state.status,
        question: state.pending,
        table: state.table,
        machine: state.machine,
        error: state.error,
      })
    }
    return !TERMINAL.has(pending.status)
  }

  async run(sleep: (ms: number) => Promise<void> = defaultSleep): Promise<void> {
    while (!this.stopped) {
      let keepGoing: boolean
      try {
        keepGoing = await this.step()
      } catch (err) {
        this.callbacks.onError(err instanceof Error ? err.message : String(err))
        keepGoing = true
      }
      if (!keepGoing) return
      await sleep(this.intervalMs)
    }
  }

  /** Force a refresh after posting an answer instead of waiting a second. */
  async refresh(): Promise<void> {
    this.lastQuestionId = null
    this.lastStatus = null
    await this.step()
  }
}

function defaultSleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms))
}
