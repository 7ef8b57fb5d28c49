/** Wire types of the emopulse HTTP API. Nullable means the value is
 * undefined server-side and must render as a gap or placeholder, never 0. */

export interface ProvinceRow {
  region: string;
  score: number | null;
  alarm: boolean;
  rank: number | null;
  /** 0 = gray sentinel (alarm or no data); 1..5 = deepening blue. */
  color_bucket: number;
}

export interface SummaryPayload {
  date: string;
  national_average: number | null;
  provinces: ProvinceRow[];
}

export interface RankEntry {
  region: string;
  score: number;
  delta: number;
}

export type RankPayload = RankEntry[];

export interface HourRow {
  hour: number;
  /** Ratios in canonical label order happy, sad, angry, surprise, fear. */
  ratios: number[] | null;
}

export interface HourlyPayload {
  region: string;
  date: string;
  hours: HourRow[];
}

export const EMOTION_LABELS = ["happy", "sad", "angry", "surprise", "fear"] as const;
export type EmotionLabel = (typeof EMOTION_LABELS)[number];
