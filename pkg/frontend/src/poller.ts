import { ApiClient } from "./api.js";
import { HourlyPayload, RankPayload, SummaryPayload } from "./types.js";

export interface ViewState {
  date: string;
  region: string | null;
  pollIntervalSeconds: number;
  stale: boolean;
  summary: SummaryPayload | null;
  rank: RankPayload | null;
  hourly: HourlyPayload | null;
}

type Endpoint = "summary" | "rank" | "hourly";

/** Polls the API and keeps the last good payloads.
 *
 * A failed refresh flips the stale flag but never discards data already
 * shown. At most one fetch per endpoint is in flight; an overlapping
 * request coalesces onto the pending one. All numbers pass through
 * untouched, rendering is someone else's job.
 */
export class Poller {
  readonly state: ViewState;
  private inflight = new Map<Endpoint, Promise<void>>();
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: (state: ViewState) => void,
    options?: { date?: string; pollIntervalSeconds?: number },
  ) {
    this.state = {
      date: options?.date ?? new Date().toISOString().slice(0, 10),
      region: null,
      pollIntervalSeconds: options?.pollIntervalSeconds ?? 5,
      stale: false,
      summary: null,
      rank: null,
      hourly: null,
    };
  }

  start(): void {
    void this.refreshAll();
    this.timer = setInterval(
      () => void this.refreshAll(),
      this.state.pollIntervalSeconds * 1000,
    );
  }

  stop(): void {
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  setDate(date: string): Promise<void> {
    this.state.date = date;
    this.state.summary = null;
    this.state.rank = null;
    this.state.hourly = null;
    this.onChange(this.state);
    return this.refreshAll();
  }

  selectRegion(region: string | null): Promise<void> {
    this.state.region = region;
    this.state.hourly = null;
    this.onChange(this.state);
    if (region === null) {
      return Promise.resolve();
    }
    return this.fetchOne("hourly");
  }

  refreshAll(): Promise<void> {
    const jobs = [this.fetchOne("summary"), this.fetchOne("rank")];
    if (this.state.region !== null) {
      jobs.push(this.fetchOne("hourly"));
    }
    return Promise.all(jobs).then(() => undefined);
  }

  /** Coalescing fetch: reuses the pending promise for the endpoint. */
  private fetchOne(endpoint: Endpoint): Promise<void> {
    const pending = this.inflight.get(endpoint);
    if (pending) return pending;
    const requestedDate = this.state.date;
    const requestedRegion = this.state.region;
    const job = this.load(endpoint, requestedDate, requestedRegion)
      .then((apply) => {
        // drop responses that arrive after the view moved on
        if (this.state.date !== requestedDate) return;
        if (endpoint === "hourly" && this.state.region !== requestedRegion) return;
        apply();
        this.state.stale = false;
      })
      .catch(() => {
        this.state.stale = true;
      })
      .finally(() => {
        this.inflight.delete(endpoint);
        this.onChange(this.state);
      });
    this.inflight.set(endpoint, job);
    return job;
  }

  private async load(
    endpoint: Endpoint,
    date: string,
    region: string | null,
  ): Promise<() => void> {
    switch (endpoint) {
      case "summary": {
        const payload = await this.api.summary(date);
        return () => {
          this.state.summary = payload;
        };
      }
      case "rank": {
        const payload = await this.api.rank(date);
        return () => {
          this.state.rank = payload;
        };
      }
      case "hourly": {
        if (region === null) return () => undefined;
        const payload = await this.api.hourly(region, date);
        return () => {
          this.state.hourly = payload;
        };
      }
    }
  }
}
