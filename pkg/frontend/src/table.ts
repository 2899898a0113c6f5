// Observation-table rendering: prefix rows over suffix columns, with the
// successor rows (S·Σ) visually separated, plus the constraint dump.

import type { TableSnapshot } from './types.js'

export const EPSILON = 'ε'

export function formatSequence(labels: string[]): string {
  return labels.length === 0 ? EPSILON : labels.join('')
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
}

export function tableToHtml(snapshot: TableSnapshot): string {
  const header = snapshot.suffixes
    .map((suffix) => `<th>${escapeHtml(formatSequence(suffix))}</th>`)
    .join('')
  const rows: string[] = []
  const emit = (inS: boolean) => {
    for (const row of snapshot.rows) {
      if (row.in_s !== inS) continue
      const cells = row.cells
        .map((cell) => `<td>${cell === null ? '·' : escapeHtml(cell)}</td>`)
        .join('')
      rows.push(
        `<tr class="${inS ? 'prefix-row' : 'successor-row'}">` +
          `<th>${escapeHtml(formatSequence(row.prefix))}</th>${cells}</tr>`,
      )
    }
  }
  emit(true)
  emit(false)
  return (
    '<table class="observation">' +
    `<thead><tr><th></th>${header}</tr></thead>` +
    `<tbody>${rows.join('')}</tbody></table>`
  )
}

export function constraintsToHtml(constraints: string[]): string {
  if (constraints.length === 0) {
    return '<p class="constraints-empty">no constraints yet</p>'
  }
  const items = constraints.map((c) => `<li>${escapeHtml(c)}</li>`).join('')
  return `<ul class="constraints">${items}</ul>`
}
