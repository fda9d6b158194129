/** Controller wiring the client, state, and renderers to the page.
 * Single-user session; every conflict is resolved by refetching. */

import { ApiError, TriageClient } from "./api.js";
import {
  renderBanner,
  renderPredictionPanel,
  renderQueue,
  renderVersion,
} from "./render.js";
import {
  gotoPage,
  initialState,
  removeFromQueue,
  restoreToQueue,
  selectAlarm,
  setConnectionError,
  setQueue,
  setVerdictError,
  setVersion,
  type TriageState,
} from "./state.js";

export class TriageApp {
  state: TriageState = initialState();

  constructor(
    private readonly client: TriageClient,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    try {
      const { causes } = await this.client.listCauses();
      this.state = { ...this.state, causes };
    } catch {
      // non-fatal: the picker stays empty until the next refresh
    }
    await this.refreshQueue();
    this.root.addEventListener("click", (event) => this.onClick(event));
  }

  async refreshQueue(): Promise<void> {
    try {
      const { alarms, version } = await this.client.listPending();
      this.state = setQueue(this.state, alarms, version);
    } catch {
      this.state = setConnectionError(this.state, "Cannot reach the triage service.");
    }
    this.draw();
  }

  async openAlarm(alarmId: string): Promise<void> {
    try {
      const detail = await this.client.getAlarm(alarmId);
      this.state = selectAlarm(this.state, detail);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        // resolved by someone else; the queue is stale
        await this.refreshQueue();
        return;
      }
      this.state = setConnectionError(this.state, "Cannot reach the triage service.");
    }
    this.draw();
  }

  async submitVerdict(alarmId: string, cause: string): Promise<void> {
    const { state, removed, index } = removeFromQueue(this.state, alarmId);
    this.state = state;
    this.draw();
    try {
      const { version } = await this.client.submitVerdict(alarmId, cause);
      this.state = setVersion(this.state, version);
    } catch (err) {
      if (removed !== null) {
        this.state = restoreToQueue(this.state, removed, index);
      }
      if (err instanceof ApiError && err.status === 404) {
        await this.refreshQueue();
        return;
      }
      if (err instanceof ApiError && err.status === 422 && err.body) {
        this.state = setVerdictError(this.state, err.body.detail);
      } else {
        this.state = setConnectionError(this.state, "Verdict not saved; service unreachable.");
      }
    }
    this.draw();
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement;
    const row = target.closest<HTMLElement>(".queue-row");
    if (row?.dataset.alarmId) {
      void this.openAlarm(row.dataset.alarmId);
      return;
    }
    if (target.matches(".pager button") && target.dataset.page !== undefined) {
      this.state = gotoPage(this.state, Number(target.dataset.page));
      this.draw();
      return;
    }
    if (target.matches(".retry")) {
      void this.refreshQueue();
      return;
    }
    const panel = target.closest<HTMLElement>(".prediction");
    if (panel?.dataset.alarmId) {
      if (target.matches(".accept") && target.dataset.cause) {
        void this.submitVerdict(panel.dataset.alarmId, target.dataset.cause);
      } else if (target.matches(".correct")) {
        const picker = panel.querySelector<HTMLSelectElement>(".cause-picker");
        if (picker) {
          void this.submitVerdict(panel.dataset.alarmId, picker.value);
        }
      }
    }
  }

  draw(): void {
    const selected = this.state.selected;
    this.root.innerHTML =
      renderBanner(this.state) +
      `<header><h1>alarm triage</h1>${renderVersion(this.state)}</header>` +
      `<main><section class="queue-pane">${renderQueue(this.state)}</section>` +
      `<section class="detail-pane">` +
      (selected ? renderPredictionPanel(selected, this.state.causes) : "") +
      `</section></main>`;
    if (this.state.verdictError) {
      const slot = this.root.querySelector(".verdict-error");
      if (slot) {
        slot.textContent = this.state.verdictError;
      }
    }
  }
}

export function mount(baseUrl: string, root: HTMLElement): TriageApp {
  const app = new TriageApp(new TriageClient(baseUrl), root);
  void app.start();
  return app;
}
