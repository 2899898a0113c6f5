// Wire types for the session API. Sequences travel as arrays of symbol
// labels; machines use the machine-file JSON schema.

export interface MooreMachineJson {
  kind: 'moore'
  input_alphabet: string[]
  output_alphabet: string[]
  states: string[]
  initial: string
  delta: Record<string, Record<string, string>>
  labels: Record<string, string>
}

export interface PreferencePayload {
  s1: string[]
  s2: string[]
}

export interface EquivalencePayload {
  machine: MooreMachineJson
}

export interface PendingQuestion {
  id: number
  kind: 'preference' | 'equivalence'
  payload: PreferencePayload | EquivalencePayload
}

export interface PendingResponse {
  status: SessionStatus
  question: PendingQuestion | null
}

export type SessionStatus = 'running' | 'waiting' | 'done' | 'closed' | 'error'

export interface TableRow {
  prefix: string[]
  in_s: boolean
  cells: (string | null)[]
}

export interface TraceEvent {
  kind: 'closure' | 'consistency' | 'eq_query'
  n_states: number
  n_known: number
}

export interface TableSnapshot {
  prefixes: string[][]
  suffixes: string[][]
  rows: TableRow[]
  constraints: string[]
  trace?: TraceEvent[]
  stats?: { pref_queries: number; eq_queries: number; unique_sequences: number }
}

export interface SessionState {
  status: SessionStatus
  pending: PendingQuestion | null
  table: TableSnapshot | null
  machine: MooreMachineJson | null
  error: string | null
  trace?: TraceEvent[]
}

// Answer values: preference verdicts are -1 (right preferred), 0 (equal),
// +1 (left preferred); equivalence answers accept or give a counterexample.
export type PreferenceVerdict = -1 | 0 | 1

export interface Counterexample {
  sequence: string[]
  value: string
}

export interface AnswerBody {
  question_id: number
  kind: 'preference' | 'equivalence'
  answer: PreferenceVerdict | 'correct' | Counterexample
}

export interface SessionView {
  sessionId: string
  status: SessionStatus
  question: PendingQuestion | null
  table: TableSnapshot | null
  machine: MooreMachineJson | null
  error: string | null
}
