// Question rendering as HTML strings. Preference questions become two
// sequence cards with prefer-left / equal / prefer-right buttons;
// equivalence questions show the drawn hypothesis plus accept /
// counterexample controls.

import { machineToSvg } from './machine.js'
import { EPSILON } from './table.js'
import type { EquivalencePayload, PendingQuestion, PreferencePayload } from './types.js'

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
}

export function sequenceCard(labels: string[], side: 'left' | 'right'): string {
  const chips =
    labels.length === 0
      ? `<span class="chip epsilon">${EPSILON}</span>`
      : labels.map((l) => `<span class="chip">${escapeHtml(l)}</span>`).join('')
  return `<div class="sequence-card" data-side="${side}">${chips}</div>`
}

export function renderPreference(question: PendingQuestion): string {
  const payload = question.payload as PreferencePayload
  return (
    `<div class="question preference" data-question-id="${question.id}">` +
    '<h3>Which behavior earns more reward?</h3>' +
    '<div class="cards">' +
    sequenceCard(payload.s1, 'left') +
    sequenceCard(payload.s2, 'right') +
    '</div>' +
    '<div class="choices">' +
    '<button data-verdict="1">prefer left</button>' +
    '<button data-verdict="0">equal</button>' +
    '<button data-verdict="-1">prefer right</button>' +
    '</div></div>'
  )
}

export function renderEquivalence(question: PendingQuestion): string {
  const payload = question.payload as EquivalencePayload
  const machine = payload.machine
  const values = machine.output_alphabet
    .map((v) => `<option value="${escapeHtml(v)}">${escapeHtml(v)}</option>`)
    .join('')
  return (
    `<div class="question equivalence" data-question-id="${question.id}">` +
    '<h3>Is this machine correct?</h3>' +
    machineToSvg(machine) +
    '<div class="choices">' +
    '<button data-accept>accept</button>' +
    '</div>' +
    '<div class="counterexample">' +
    `<input type="text" data-counterexample placeholder="counterexample, e.g. ${escapeHtml(
      machine.input_alphabet.join(' '),
    )} (empty = ${EPSILON})"/>` +
    `<select data-value>${values}</select>` +
    '<button data-reject>send counterexample</button>' +
    '<span class="validation" data-validation></span>' +
    '</div></div>'
  )
}

export function renderQuestion(question: PendingQuestion | null, status: string): string {
  if (question === null) {
    if (status === 'done') return '<p class="status done">session complete</p>'
    if (status === 'error') return '<p class="status error">session aborted</p>'
    if (status === 'closed') return '<p class="status">session closed</p>'
    return '<p class="status">learner is thinking…</p>'
  }
  return question.kind === 'preference'
    ? renderPreference(question)
    : renderEquivalence(question)
}
