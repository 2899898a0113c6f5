// DOM bootstrap: session form, 1 s polling, answer wiring. All rendering
// goes through the pure string builders so the logic stays testable.

import { SessionApi } from './api.js'
import {
  acceptAnswer,
  counterexampleAnswer,
  preferenceAnswer,
  validateCounterexample,
} from './answers.js'
import { machineToSvg } from './machine.js'
import { phasePlotSvg } from './phase.js'
import { SessionPoller } from './poll.js'
import { renderQuestion } from './render.js'
import { constraintsToHtml, tableToHtml } from './table.js'
import type { PendingQuestion, PreferenceVerdict, SessionView } from './types.js'

const api = new SessionApi((url, init) => fetch(url, init))

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing #${id}`)
  return node as T
}

let poller: SessionPoller | null = null
let currentView: SessionView | null = null
let inputAlphabet: string[] = []
let outputAlphabet: string[] = []

function setBusy(busy: boolean): void {
  el<HTMLDivElement>('question')
    .querySelectorAll('button, input, select')
    .forEach((node) => ((node as HTMLButtonElement).disabled = busy))
}

async function submit(question: PendingQuestion, build: () => ReturnType<typeof preferenceAnswer>): Promise<void> {
  if (!currentView) return
  setBusy(true)
  try {
    await api.postAnswer(currentView.sessionId, build())
    await poller?.refresh()
  } catch (err) {
    showError(err instanceof Error ? err.message : String(err))
    setBusy(false)
  }
}

function wireQuestion(view: SessionView): void {
  const container = el<HTMLDivElement>('question')
  container.innerHTML = renderQuestion(view.question, view.status)
  const question = view.question
  if (!question) return
  if (question.kind === 'preference') {
    container.querySelectorAll<HTMLButtonElement>('button[data-verdict]').forEach((button) => {
      button.addEventListener('click', () => {
        const verdict = Number(button.dataset.verdict) as PreferenceVerdict
        void submit(question, () => preferenceAnswer(question, verdict))
      })
    })
    return
  }
  container.querySelector<HTMLButtonElement>('button[data-accept]')?.addEventListener('click', () => {
    void submit(question, () => acceptAnswer(question))
  })
  container.querySelector<HTMLButtonElement>('button[data-reject]')?.addEventListener('click', () => {
    const text = container.querySelector<HTMLInputElement>('input[data-counterexample]')!.value
    const value = container.querySelector<HTMLSelectElement>('select[data-value]')!.value
    const checked = validateCounterexample({ text, value }, inputAlphabet, outputAlphabet)
    const validation = container.querySelector<HTMLSpanElement>('[data-validation]')!
    if (!checked.ok) {
      validation.textContent = checked.error
      return
    }
    validation.textContent = ''
    void submit(question, () => counterexampleAnswer(question, checked.value))
  })
}

function showError(message: string): void {
  el<HTMLParagraphElement>('error').textContent = message
}

function renderView(view: SessionView): void {
  currentView = view
  el<HTMLSpanElement>('session-id').textContent = view.sessionId
  el<HTMLSpanElement>('session-status').textContent = view.status
  showError(view.error ?? '')
  wireQuestion(view)
  if (view.table) {
    el<HTMLDivElement>('table').innerHTML = tableToHtml(view.table)
    el<HTMLDivElement>('constraints').innerHTML = constraintsToHtml(view.table.constraints)
    el<HTMLDivElement>('phase').innerHTML = phasePlotSvg(view.table.trace ?? [])
  }
  const machineBox = el<HTMLDivElement>('machine')
  if (view.machine) {
    const link = `<a download="machine.json" href="data:application/json,${encodeURIComponent(
      JSON.stringify(view.machine, null, 2),
    )}">download machine.json</a>`
    machineBox.innerHTML = `<h3>final machine</h3>${machineToSvg(view.machine)}${link}`
  } else {
    machineBox.innerHTML = ''
  }
}

el<HTMLFormElement>('session-form').addEventListener('submit', (event) => {
  event.preventDefault()
  const inputs = el<HTMLInputElement>('input-alphabet').value
  const outputs = el<HTMLInputElement>('output-alphabet').value
  inputAlphabet = inputs.split(',').map((s) => s.trim()).filter(Boolean)
  outputAlphabet = outputs.split(',').map((s) => s.trim()).filter(Boolean)
  void (async () => {
    try {
      poller?.stop()
      const sessionId = await api.startSession(inputAlphabet, outputAlphabet)
      poller = new SessionPoller(api, sessionId, {
        onView: renderView,
        onError: showError,
      })
      void poller.run()
    } catch (err) {
      showError(err instanceof Error ? err.message : String(err))
    }
  })()
})
