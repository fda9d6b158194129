/** Pure HTML renderers. Everything shown is a verbatim service value;
 * keeping these as string functions lets tests assert on output without
 * a browser. */

import type { AlarmDetail, AlarmSummary, DiffRow, Prediction } from "./api.js";
import { currentPage, pageCount, type TriageState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function routeBadge(prediction: Prediction): string {
  if (prediction.route === "high_similarity") {
    return `<span class="badge badge-high" title="trusted top-1 match">top-1 match</span>`;
  }
  if (prediction.route === "low_similarity") {
    const score =
      prediction.vote_score === null ? "" : ` (score ${prediction.vote_score.toFixed(3)})`;
    return `<span class="badge badge-low" title="below threshold; nearest-neighbour vote">k-NN vote${escapeHtml(score)}</span>`;
  }
  return `<span class="badge badge-none">no history</span>`;
}

export function renderQueueRow(alarm: AlarmSummary): string {
  const cause = alarm.predicted_cause ?? "?";
  const confidence =
    alarm.confidence === undefined ? "" : ` ${(alarm.confidence * 100).toFixed(1)}%`;
  return (
    `<tr class="queue-row" data-alarm-id="${escapeHtml(alarm.alarm_id)}">` +
    `<td>${escapeHtml(alarm.alarm_id)}</td>` +
    `<td>${escapeHtml(alarm.function_point)}</td>` +
    `<td>day ${alarm.day}</td>` +
    `<td><span class="cause-badge">${escapeHtml(cause)}</span>${confidence}</td>` +
    `</tr>`
  );
}

export function renderQueue(state: TriageState): string {
  if (state.queue.length === 0) {
    return `<p class="empty-state">No pending alarms. New alarms appear here as they are ingested.</p>`;
  }
  const rows = currentPage(state).map(renderQueueRow).join("");
  const pages = pageCount(state);
  const pager =
    pages > 1
      ? `<nav class="pager">page ${state.page + 1} of ${pages}` +
        `<button data-page="${state.page - 1}" ${state.page === 0 ? "disabled" : ""}>prev</button>` +
        `<button data-page="${state.page + 1}" ${state.page === pages - 1 ? "disabled" : ""}>next</button>` +
        `</nav>`
      : "";
  return (
    `<table class="queue"><thead><tr>` +
    `<th>alarm</th><th>function point</th><th>day</th><th>predicted cause</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>${pager}`
  );
}

function diffCell(text: string | null): string {
  return text === null ? `<td class="absent"></td>` : `<td>${escapeHtml(text)}</td>`;
}

export function renderDiff(diff: DiffRow[]): string {
  if (diff.length === 0) {
    return `<p class="no-exemplar">No historical exemplar to compare against.</p>`;
  }
  if (diff.every((row) => !row.hl)) {
    return (
      `<p class="no-differences">No differences against the exemplar.</p>` +
      renderDiffTable(diff)
    );
  }
  return renderDiffTable(diff);
}

function renderDiffTable(diff: DiffRow[]): string {
  // highlighted rows come first so the evidence is visible without scrolling;
  // original positions stay available via data-row
  const indexed = diff.map((row, i) => ({ row, i }));
  indexed.sort((a, b) => Number(b.row.hl) - Number(a.row.hl) || a.i - b.i);
  const rows = indexed
    .map(
      ({ row, i }) =>
        `<tr class="${row.hl ? "hl" : ""}" data-row="${i}" data-op="${row.op}">` +
        diffCell(row.left) +
        diffCell(row.right) +
        `</tr>`,
    )
    .join("");
  return (
    `<table class="diff"><thead><tr><th>this log</th><th>exemplar</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderPredictionPanel(detail: AlarmDetail, causes: string[]): string {
  const p = detail.prediction;
  const cause = p.cause === null ? "no prediction" : p.cause;
  const exemplar =
    p.exemplar_id === null
      ? ""
      : `<span class="exemplar">exemplar ${escapeHtml(p.exemplar_id)}</span>`;
  const options = causes
    .map((c) => `<option value="${escapeHtml(c)}">${escapeHtml(c)}</option>`)
    .join("");
  return (
    `<section class="prediction" data-alarm-id="${escapeHtml(detail.alarm_id)}">` +
    `<h2>${escapeHtml(detail.alarm_id)}</h2>` +
    `<p class="verdict-line">predicted <strong class="predicted-cause">${escapeHtml(cause)}</strong>` +
    ` <span class="confidence">${(p.confidence * 100).toFixed(1)}%</span> ${routeBadge(p)} ${exemplar}</p>` +
    `<div class="actions">` +
    `<button class="accept" data-cause="${escapeHtml(cause)}">accept ${escapeHtml(cause)}</button>` +
    `<select class="cause-picker">${options}</select>` +
    `<button class="correct">submit corrected cause</button>` +
    `</div>` +
    `<div class="verdict-error" role="alert"></div>` +
    renderDiff(detail.diff) +
    `</section>`
  );
}

export function renderBanner(state: TriageState): string {
  if (state.connectionError === null) {
    return "";
  }
  return (
    `<div class="banner error" role="alert">` +
    `${escapeHtml(state.connectionError)} <button class="retry">retry</button></div>`
  );
}

export function renderVersion(state: TriageState): string {
  return `<span class="corpus-version">corpus v${state.version}</span>`;
}
