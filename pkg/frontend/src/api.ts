/** Typed client for the triage service. Every value the UI shows comes
 * from these response shapes verbatim. */

export type RouteName = "high_similarity" | "low_similarity" | "no_history";
export type DiffOpName = "equal" | "change" | "delete" | "insert";

export interface RankedMatch {
  id: string;
  cause: string;
  sim: number;
}

export interface Prediction {
  cause: string | null;
  route: RouteName;
  confidence: number;
  exemplar_id: string | null;
  vote_score: number | null;
  top_k: RankedMatch[];
}

export interface DiffRow {
  left: string | null;
  right: string | null;
  op: DiffOpName;
  hl: boolean;
}

export interface AlarmSummary {
  alarm_id: string;
  function_point: string;
  day: number;
  verified: boolean;
  cause: string | null;
  predicted_cause?: string | null;
  confidence?: number;
  route?: RouteName;
  submitted_at?: string;
}

export interface QueueResponse {
  alarms: AlarmSummary[];
  version: number;
}

export interface AlarmDetail {
  alarm_id: string;
  function_point: string;
  day: number;
  verified: boolean;
  cause: string | null;
  submitted_at: string;
  prediction: Prediction;
  diff: DiffRow[];
  version: number;
}

export interface AlarmIn {
  alarm_id: string;
  script_id?: string;
  function_point?: string;
  day?: number;
  lines: string[];
}

export interface IngestResponse {
  alarm_id: string;
  prediction: Prediction;
  diff: DiffRow[];
  version: number;
}

export interface VerdictResponse {
  alarm_id: string;
  cause: string;
  version: number;
}

/** Error body the service uses for domain failures. */
export interface ServiceError {
  error: string;
  detail: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ServiceError | null,
  ) {
    super(body ? `${body.error}: ${body.detail}` : `HTTP ${status}`);
  }
}

type Fetch = typeof fetch;

export class TriageClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: Fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, null);
    }
    if (!response.ok) {
      let body: ServiceError | null = null;
      try {
        body = (await response.json()) as ServiceError;
      } catch {
        body = null;
      }
      throw new ApiError(response.status, body);
    }
    return (await response.json()) as T;
  }

  listPending(): Promise<QueueResponse> {
    return this.request<QueueResponse>("/alarms?status=pending");
  }

  getAlarm(alarmId: string): Promise<AlarmDetail> {
    return this.request<AlarmDetail>(`/alarms/${encodeURIComponent(alarmId)}`);
  }

  ingest(alarm: AlarmIn): Promise<IngestResponse> {
    return this.request<IngestResponse>("/alarms", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(alarm),
    });
  }

  submitVerdict(alarmId: string, cause: string): Promise<VerdictResponse> {
    return this.request<VerdictResponse>(
      `/alarms/${encodeURIComponent(alarmId)}/cause`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ cause }),
      },
    );
  }

  listCauses(): Promise<{ causes: string[] }> {
    return this.request<{ causes: string[] }>("/causes");
  }
}
