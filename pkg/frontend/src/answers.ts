// Building and validating answer payloads. Every answer echoes the
// pending question's id, so a stale click can never hit the wrong query.

import type { AnswerBody, Counterexample, PendingQuestion, PreferenceVerdict } from './types.js'

export function preferenceAnswer(
  question: PendingQuestion,
  verdict: PreferenceVerdict,
): AnswerBody {
  if (question.kind !== 'preference') {
    throw new Error(`cannot answer a ${question.kind} question with a preference`)
  }
  return { question_id: question.id, kind: 'preference', answer: verdict }
}

export function acceptAnswer(question: PendingQuestion): AnswerBody {
  if (question.kind !== 'equivalence') {
    throw new Error(`cannot accept a ${question.kind} question`)
  }
  return { question_id: question.id, kind: 'equivalence', answer: 'correct' }
}

export interface CounterexampleDraft {
  text: string
  value: string
}

// Splits on whitespace or commas: "a b" and "a,b" both mean the two-symbol
// sequence; an empty box means the empty sequence.
export function parseSequenceText(text: string): string[] {
  return text
    .split(/[\s,]+/)
    .map((part) => part.trim())
    .filter((part) => part.length > 0)
}

export function validateCounterexample(
  draft: CounterexampleDraft,
  inputAlphabet: string[],
  outputAlphabet: string[],
): { ok: true; value: Counterexample } | { ok: false; error: string } {
  const sequence = parseSequenceText(draft.text)
  const bad = sequence.filter((label) => !inputAlphabet.includes(label))
  if (bad.length > 0) {
    return { ok: false, error: `unknown symbols: ${bad.join(', ')}` }
  }
  if (!outputAlphabet.includes(draft.value)) {
    return { ok: false, error: `value must be one of ${outputAlphabet.join(', ')}` }
  }
  return { ok: true, value: { sequence, value: draft.value } }
}

export function counterexampleAnswer(
  question: PendingQuestion,
  counterexample: Counterexample,
): AnswerBody {
  if (question.kind !== 'equivalence') {
    throw new Error(`cannot give a counterexample to a ${question.kind} question`)
  }
  return { question_id: question.id, kind: 'equivalence', answer: counterexample }
}
