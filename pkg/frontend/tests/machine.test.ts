import { describe, expect, it } from 'vitest'

import { groupEdges, layoutStates, machineToSvg } from '../src/machine'
import type { MooreMachineJson } from '../src/types'

const astarb: MooreMachineJson = {
  kind: 'moore',
  input_alphabet: ['a', 'b'],
  output_alphabet: ['0', '1'],
  states: ['q0', 'q1', 'q2'],
  initial: 'q0',
  delta: {
    q0: { a: 'q0', b: 'q1' },
    q1: { a: 'q2', b: 'q2' },
    q2: { a: 'q2', b: 'q2' },
  },
  labels: { q0: '0', q1: '1', q2: '0' },
}

describe('state layout', () => {
  it('centers a single state', () => {
    const nodes = layoutStates(['only'], 360)
    expect(nodes).toEqual([{ name: 'only', x: 180, y: 180 }])
  })

  it('spreads states around a circle at equal radii', () => {
    const nodes = layoutStates(['a', 'b', 'c', 'd'], 360)
    expect(nodes).toHaveLength(4)
    const radii = nodes.map((n) => Math.hypot(n.x - 180, n.y - 180))
    for (const r of radii) {
      expect(Math.abs(r - radii[0])).toBeLessThan(1.5)
    }
    const names = new Set(nodes.map((n) => n.name))
    expect(names.size).toBe(4)
  })
})

describe('edge grouping', () => {
  it('merges parallel transitions into one labeled edge', () => {
    const edges = groupEdges(astarb)
    const q1out = edges.filter((e) => e.from === 'q1')
    expect(q1out).toEqual([{ from: 'q1', to: 'q2', symbols: ['a', 'b'] }])
  })

  it('keeps self-loops', () => {
    const edges = groupEdges(astarb)
    expect(edges).toContainEqual({ from: 'q0', to: 'q0', symbols: ['a'] })
  })
})

describe('svg output', () => {
  it('draws every state with its name and output label', () => {
    const svg = machineToSvg(astarb)
    for (const state of astarb.states) {
      expect(svg).toContain(`>${state}</text>`)
    }
    expect(svg).toContain('class="state initial"')
    expect(svg.match(/<circle class="state/g)).toHaveLength(3)
    expect(svg).toContain('aria-label="hypothesis machine with 3 states"')
  })

  it('labels merged edges with the symbol list', () => {
    const svg = machineToSvg(astarb)
    expect(svg).toContain('>a,b</text>')
  })

  it('escapes markup in labels', () => {
    const machine: MooreMachineJson = {
      ...astarb,
      states: ['<q>'],
      initial: '<q>',
      delta: { '<q>': { a: '<q>', b: '<q>' } },
      labels: { '<q>': '0' },
    }
    const svg = machineToSvg(machine)
    expect(svg).not.toContain('<q>')
    expect(svg).toContain('&lt;q&gt;')
  })
})
