// Termination phase plot: x = known representative values, y = states in
// the hypothesis. Paths start at (0, 1); closure events draw as circles,
// consistency events as squares, equivalence queries as crosses.

import type { TraceEvent } from './types.js'

export interface PhasePoint {
  x: number
  y: number
  kind: 'start' | TraceEvent['kind']
}

export function phasePoints(events: TraceEvent[]): PhasePoint[] {
  const points: PhasePoint[] = [{ x: 0, y: 1, kind: 'start' }]
  for (const event of events) {
    points.push({ x: event.n_known, y: event.n_states, kind: event.kind })
  }
  return points
}

const WIDTH = 300
const HEIGHT = 220
const PAD = 30

export function phasePlotSvg(events: TraceEvent[]): string {
  const points = phasePoints(events)
  const maxX = Math.max(1, ...points.map((p) => p.x))
  const maxY = Math.max(2, ...points.map((p) => p.y))
  const sx = (x: number) => PAD + (x / maxX) * (WIDTH - 2 * PAD)
  const sy = (y: number) => HEIGHT - PAD - ((y - 1) / (maxY - 1)) * (HEIGHT - 2 * PAD)
  const parts: string[] = []
  parts.push(
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="phase-plot" role="img" ` +
      'aria-label="termination phase plot">',
  )
  parts.push(
    `<line class="axis" x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}"/>`,
  )
  parts.push(`<line class="axis" x1="${PAD}" y1="${HEIGHT - PAD}" x2="${PAD}" y2="${PAD}"/>`)
  parts.push(
    `<text class="axis-label" x="${WIDTH / 2}" y="${HEIGHT - 6}">known values</text>`,
  )
  parts.push(
    `<text class="axis-label y" x="10" y="${HEIGHT / 2}" ` +
      `transform="rotate(-90 10 ${HEIGHT / 2})">states</text>`,
  )
  const path = points
    .map((p, i) => `${i === 0 ? 'M' : 'L'} ${sx(p.x).toFixed(1)} ${sy(p.y).toFixed(1)}`)
    .join(' ')
  parts.push(`<path class="phase-path" d="${path}"/>`)
  for (const p of points) {
    const x = sx(p.x)
    const y = sy(p.y)
    if (p.kind === 'consistency') {
      parts.push(`<rect class="pt consistency" x="${(x - 4).toFixed(1)}" y="${(y - 4).toFixed(1)}" width="8" height="8"/>`)
    } else if (p.kind === 'eq_query') {
      parts.push(
        `<path class="pt eq" d="M ${(x - 4).toFixed(1)} ${(y - 4).toFixed(1)} L ${(x + 4).toFixed(1)} ${(y + 4).toFixed(1)} ` +
          `M ${(x - 4).toFixed(1)} ${(y + 4).toFixed(1)} L ${(x + 4).toFixed(1)} ${(y - 4).toFixed(1)}"/>`,
      )
    } else {
      parts.push(`<circle class="pt ${p.kind}" cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="4"/>`)
    }
  }
  parts.push('</svg>')
  return parts.join('')
}
