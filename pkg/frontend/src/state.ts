/** Session state for the triage view. The server is the source of truth;
 * this module only arranges what it returned and tracks the optimistic
 * verdict in flight so it can be rolled back on failure. */

import type { AlarmDetail, AlarmSummary } from "./api.js";

export const PAGE_SIZE = 50;

export interface TriageState {
  queue: AlarmSummary[];
  version: number;
  page: number;
  selected: AlarmDetail | null;
  causes: string[];
  /** Non-null while the service is unreachable. */
  connectionError: string | null;
  /** Inline error for the verdict form (e.g. unrecognized cause). */
  verdictError: string | null;
}

export function initialState(): TriageState {
  return {
    queue: [],
    version: 0,
    page: 0,
    selected: null,
    causes: [],
    connectionError: null,
    verdictError: null,
  };
}

/** Pending alarms in submission order, as the service lists them. */
export function setQueue(
  state: TriageState,
  alarms: AlarmSummary[],
  version: number,
): TriageState {
  const pageCount = Math.max(1, Math.ceil(alarms.length / PAGE_SIZE));
  return {
    ...state,
    queue: alarms,
    version,
    page: Math.min(state.page, pageCount - 1),
    connectionError: null,
  };
}

export function currentPage(state: TriageState): AlarmSummary[] {
  const start = state.page * PAGE_SIZE;
  return state.queue.slice(start, start + PAGE_SIZE);
}

export function pageCount(state: TriageState): number {
  return Math.max(1, Math.ceil(state.queue.length / PAGE_SIZE));
}

export function gotoPage(state: TriageState, page: number): TriageState {
  const clamped = Math.min(Math.max(page, 0), pageCount(state) - 1);
  return { ...state, page: clamped };
}

export function selectAlarm(state: TriageState, detail: AlarmDetail): TriageState {
  return { ...state, selected: detail, verdictError: null };
}

/** Optimistically drop a confirmed alarm from the queue. Returns the new
 * state plus the removed row so a failed submit can restore it. */
export function removeFromQueue(
  state: TriageState,
  alarmId: string,
): { state: TriageState; removed: AlarmSummary | null; index: number } {
  const index = state.queue.findIndex((a) => a.alarm_id === alarmId);
  if (index < 0) {
    return { state, removed: null, index };
  }
  const queue = state.queue.slice();
  const [removed] = queue.splice(index, 1);
  const selected =
    state.selected && state.selected.alarm_id === alarmId ? null : state.selected;
  return { state: { ...state, queue, selected }, removed, index };
}

export function restoreToQueue(
  state: TriageState,
  row: AlarmSummary,
  index: number,
): TriageState {
  const queue = state.queue.slice();
  queue.splice(Math.min(index, queue.length), 0, row);
  return { ...state, queue };
}

export function setConnectionError(state: TriageState, message: string): TriageState {
  return { ...state, connectionError: message };
}

export function setVerdictError(
  state: TriageState,
  message: string | null,
): TriageState {
  return { ...state, verdictError: message };
}

export function setVersion(state: TriageState, version: number): TriageState {
  return { ...state, version };
}
