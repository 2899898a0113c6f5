// Thin client over the session endpoints. The fetch function is injected
// so tests can run without a browser or server.

import type { AnswerBody, MooreMachineJson, PendingResponse, SessionState } from './types.js'

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message)
  }
}

async function expectOk(response: Response): Promise<unknown> {
  if (!response.ok) {
    let detail = response.statusText
    try {
      const body = (await response.json()) as { detail?: string }
      if (body.detail) detail = body.detail
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail)
  }
  return response.json()
}

export class SessionApi {
  constructor(
    private readonly fetchFn: FetchLike,
    private readonly base = '',
  ) {}

  private url(path: string): string {
    return `${this.base}${path}`
  }

  async startSession(inputAlphabet: string[], outputAlphabet: string[]): Promise<string> {
    const body = { input_alphabet: inputAlphabet, output_alphabet: outputAlphabet }
    const data = (await expectOk(
      await this.fetchFn(this.url('/sessions'), {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
      }),
    )) as { session_id: string }
    return data.session_id
  }

  async getPending(sessionId: string): Promise<PendingResponse> {
    return (await expectOk(
      await this.fetchFn(this.url(`/sessions/${sessionId}/pending`)),
    )) as PendingResponse
  }

  async postAnswer(sessionId: string, body: AnswerBody): Promise<void> {
    await expectOk(
      await this.fetchFn(this.url(`/sessions/${sessionId}/answer`), {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
      }),
    )
  }

  async getState(sessionId: string): Promise<SessionState> {
    return (await expectOk(
      await this.fetchFn(this.url(`/sessions/${sessionId}/state`)),
    )) as SessionState
  }

  async getMachine(sessionId: string): Promise<MooreMachineJson> {
    return (await expectOk(
      await this.fetchFn(this.url(`/sessions/${sessionId}/machine`)),
    )) as MooreMachineJson
  }
}
