// Hypothesis machines drawn as SVG: states on a circle, edges grouped by
// (source, target) with symbol lists as labels, self-loops as small arcs.

import type { MooreMachineJson } from './types.js'

export interface NodeLayout {
  name: string
  x: number
  y: number
}

const SIZE = 360
const NODE_RADIUS = 26

export function layoutStates(states: string[], size = SIZE): NodeLayout[] {
  const cx = size / 2
  const cy = size / 2
  if (states.length === 1) {
    return [{ name: states[0], x: cx, y: cy }]
  }
  const ring = size / 2 - NODE_RADIUS - 30
  return states.map((name, i) => {
    const angle = (2 * Math.PI * i) / states.length - Math.PI / 2
    return {
      name,
      x: Math.round(cx + ring * Math.cos(angle)),
      y: Math.round(cy + ring * Math.sin(angle)),
    }
  })
}

export interface EdgeGroup {
  from: string
  to: string
  symbols: string[]
}

export function groupEdges(machine: MooreMachineJson): EdgeGroup[] {
  const groups = new Map<string, EdgeGroup>()
  for (const state of machine.states) {
    const row = machine.delta[state] ?? {}
    for (const symbol of machine.input_alphabet) {
      const target = row[symbol]
      if (target === undefined) continue
      const key = `${state}\u0000${target}`
      let group = groups.get(key)
      if (!group) {
        group = { from: state, to: target, symbols: [] }
        groups.set(key, group)
      }
      group.symbols.push(symbol)
    }
  }
  return [...groups.values()]
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
}

function edgePath(a: NodeLayout, b: NodeLayout): { path: string; lx: number; ly: number } {
  if (a.name === b.name) {
    const path =
      `M ${a.x - 10} ${a.y - NODE_RADIUS + 4} ` +
      `C ${a.x - 30} ${a.y - NODE_RADIUS - 38}, ${a.x + 30} ${a.y - NODE_RADIUS - 38}, ` +
      `${a.x + 10} ${a.y - NODE_RADIUS + 4}`
    return { path, lx: a.x, ly: a.y - NODE_RADIUS - 34 }
  }
  const dx = b.x - a.x
  const dy = b.y - a.y
  const len = Math.hypot(dx, dy) || 1
  const startX = a.x + (dx / len) * NODE_RADIUS
  const startY = a.y + (dy / len) * NODE_RADIUS
  const endX = b.x - (dx / len) * (NODE_RADIUS + 6)
  const endY = b.y - (dy / len) * (NODE_RADIUS + 6)
  // bow each edge sideways so opposite directions do not overlap
  const midX = (startX + endX) / 2 - (dy / len) * 18
  const midY = (startY + endY) / 2 + (dx / len) * 18
  return {
    path: `M ${startX} ${startY} Q ${midX} ${midY} ${endX} ${endY}`,
    lx: Math.round(midX),
    ly: Math.round(midY - 4),
  }
}

export function machineToSvg(machine: MooreMachineJson, size = SIZE): string {
  const nodes = layoutStates(machine.states, size)
  const byName = new Map(nodes.map((n) => [n.name, n]))
  const parts: string[] = []
  parts.push(
    `<svg viewBox="0 0 ${size} ${size}" class="machine" role="img" ` +
      `aria-label="hypothesis machine with ${machine.states.length} states">`,
  )
  parts.push(
    '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
      'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
      '<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>',
  )
  for (const edge of groupEdges(machine)) {
    const a = byName.get(edge.from)
    const b = byName.get(edge.to)
    if (!a || !b) continue
    const { path, lx, ly } = edgePath(a, b)
    const label = escapeXml(edge.symbols.join(','))
    parts.push(`<path class="edge" d="${path}" marker-end="url(#arrow)"/>`)
    parts.push(`<text class="edge-label" x="${lx}" y="${ly}">${label}</text>`)
  }
  for (const node of nodes) {
    const initial = node.name === machine.initial
    const label = machine.labels[node.name]
    parts.push(
      `<circle class="state${initial ? ' initial' : ''}" cx="${node.x}" cy="${node.y}" ` +
        `r="${NODE_RADIUS}"/>`,
    )
    if (initial) {
      parts.push(
        `<line class="initial-marker" x1="${node.x - NODE_RADIUS - 22}" y1="${node.y}" ` +
          `x2="${node.x - NODE_RADIUS - 2}" y2="${node.y}" marker-end="url(#arrow)"/>`,
      )
    }
    parts.push(
      `<text class="state-name" x="${node.x}" y="${node.y - 2}">${escapeXml(node.name)}</text>`,
    )
    parts.push(
      `<text class="state-label" x="${node.x}" y="${node.y + 13}">${escapeXml(label ?? '?')}</text>`,
    )
  }
  parts.push('</svg>')
  return parts.join('')
}
