import { describe, expect, it } from 'vitest'

import { constraintsToHtml, formatSequence, tableToHtml } from '../src/table'
import type { TableSnapshot } from '../src/types'

const snapshot: TableSnapshot = {
  prefixes: [[], ['b']],
  suffixes: [[]],
  rows: [
    { prefix: [], in_s: true, cells: ['v0'] },
    { prefix: ['b'], in_s: true, cells: ['v2'] },
    { prefix: ['a'], in_s: false, cells: ['v0'] },
    { prefix: ['b', 'a'], in_s: false, cells: [null] },
  ],
  constraints: ['v0 < v2'],
}

describe('sequence formatting', () => {
  it('renders the empty sequence as epsilon', () => {
    expect(formatSequence([])).toBe('ε')
    expect(formatSequence(['b', 'a'])).toBe('ba')
  })
})

describe('table html', () => {
  it('puts prefix rows before successor rows', () => {
    const html = tableToHtml(snapshot)
    const prefixIndex = html.indexOf('prefix-row')
    const successorIndex = html.indexOf('successor-row')
    expect(prefixIndex).toBeGreaterThan(-1)
    expect(successorIndex).toBeGreaterThan(prefixIndex)
  })

  it('shows variables and placeholders for unfilled cells', () => {
    const html = tableToHtml(snapshot)
    expect(html).toContain('<td>v0</td>')
    expect(html).toContain('<td>·</td>')
    expect(html).toContain('<th>ε</th>')
    expect(html).toContain('<th>ba</th>')
  })
})

describe('constraint list', () => {
  it('renders one item per constraint line', () => {
    const html = constraintsToHtml(['v0 < v2', 'v0 = 0'])
    expect(html.match(/<li>/g)).toHaveLength(2)
    expect(html).toContain('v0 &lt; v2')
  })

  it('says so when empty', () => {
    expect(constraintsToHtml([])).toContain('no constraints yet')
  })
})
