import { HourlyPayload, RankPayload, SummaryPayload } from "./types.js";

export type FetchJson = (url: string) => Promise<unknown>;

export const defaultFetchJson: FetchJson = async (url) => {
  const response = await fetch(url);
  if (!response.ok) {
    throw new Error(`GET ${url} -> ${response.status}`);
  }
  return response.json();
};

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchJson: FetchJson = defaultFetchJson,
  ) {}

  summary(date: string): Promise<SummaryPayload> {
    return this.fetchJson(`${this.base}/api/v1/summary?date=${encodeURIComponent(date)}`) as Promise<SummaryPayload>;
  }

  rank(date: string): Promise<RankPayload> {
    return this.fetchJson(`${this.base}/api/v1/rank?date=${encodeURIComponent(date)}`) as Promise<RankPayload>;
  }

  hourly(region: string, date: string): Promise<HourlyPayload> {
    return this.fetchJson(
      `${this.base}/api/v1/region/${encodeURIComponent(region)}/hourly?date=${encodeURIComponent(date)}`,
    ) as Promise<HourlyPayload>;
  }
}
