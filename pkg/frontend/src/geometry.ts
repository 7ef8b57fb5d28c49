/** Bundled simplified map geometry: a tile cartogram of the 34
 * province-level regions, keyed by region code. Columns run west to
 * east, rows north to south; the layout is deliberately coarse, no
 * external tile or geo service is involved. The two non-geographic
 * codes render as chips beside the map. */

export interface Cell {
  col: number;
  row: number;
  name: string;
  offMap?: boolean;
}

export const CELL_SIZE = 46;
export const CELL_GAP = 4;

export const GEOMETRY: Record<string, Cell> = {
  xinjiang: { col: 0, row: 1, name: "新疆" },
  xizang: { col: 0, row: 3, name: "西藏" },
  qinghai: { col: 1, row: 2, name: "青海" },
  gansu: { col: 2, row: 2, name: "甘肃" },
  ningxia: { col: 3, row: 2, name: "宁夏" },
  shaanxi: { col: 3, row: 3, name: "陕西" },
  sichuan: { col: 2, row: 4, name: "四川" },
  chongqing: { col: 3, row: 4, name: "重庆" },
  yunnan: { col: 2, row: 5, name: "云南" },
  guizhou: { col: 3, row: 5, name: "贵州" },
  guangxi: { col: 3, row: 7, name: "广西" },
  hainan: { col: 3, row: 8, name: "海南" },
  neimenggu: { col: 4, row: 1, name: "内蒙古" },
  shanxi: { col: 4, row: 2, name: "山西" },
  henan: { col: 4, row: 3, name: "河南" },
  hubei: { col: 4, row: 4, name: "湖北" },
  hunan: { col: 4, row: 5, name: "湖南" },
  guangdong: { col: 4, row: 7, name: "广东" },
  macau: { col: 4, row: 8, name: "澳门" },
  beijing: { col: 5, row: 2, name: "北京" },
  hebei: { col: 5, row: 3, name: "河北" },
  anhui: { col: 5, row: 5, name: "安徽" },
  jiangxi: { col: 5, row: 6, name: "江西" },
  fujian: { col: 5, row: 7, name: "福建" },
  hongkong: { col: 5, row: 8, name: "香港" },
  heilongjiang: { col: 6, row: 0, name: "黑龙江" },
  jilin: { col: 6, row: 1, name: "吉林" },
  liaoning: { col: 6, row: 2, name: "辽宁" },
  tianjin: { col: 6, row: 3, name: "天津" },
  shandong: { col: 6, row: 4, name: "山东" },
  jiangsu: { col: 6, row: 5, name: "江苏" },
  zhejiang: { col: 6, row: 6, name: "浙江" },
  taiwan: { col: 6, row: 8, name: "台湾" },
  shanghai: { col: 7, row: 5, name: "上海" },
  abroad: { col: 0, row: 7, name: "海外", offMap: true },
  other: { col: 0, row: 8, name: "其他", offMap: true },
};

export const GRID_COLS = 8;
export const GRID_ROWS = 9;
