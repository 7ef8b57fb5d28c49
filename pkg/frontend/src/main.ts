import { ApiClient } from "./api.js";
import { Poller } from "./poller.js";
import { renderHourly } from "./render/hourly.js";
import { renderSummary } from "./render/map.js";
import { renderRank } from "./render/rank.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing #${id}`);
  return element as T;
}

function init(): void {
  const mapView = byId<HTMLDivElement>("map-view");
  const rankView = byId<HTMLDivElement>("rank-view");
  const hourlyView = byId<HTMLDivElement>("hourly-view");
  const staleBadge = byId<HTMLSpanElement>("stale-badge");
  const datePicker = byId<HTMLInputElement>("date-picker");

  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "");

  const poller = new Poller(api, (state) => {
    mapView.innerHTML = renderSummary(state.summary);
    rankView.innerHTML = renderRank(state.rank);
    hourlyView.innerHTML = state.region
      ? renderHourly(state.hourly)
      : '<div class="placeholder">pick a province on the map</div>';
    staleBadge.hidden = !state.stale;
    for (const cell of mapView.querySelectorAll<SVGGElement>(".cell")) {
      cell.classList.toggle("selected", cell.dataset.region === state.region);
    }
  }, { date: params.get("date") ?? "2013-04-20" });

  datePicker.value = poller.state.date;
  datePicker.addEventListener("change", () => void poller.setDate(datePicker.value));

  mapView.addEventListener("click", (event) => {
    const target = (event.target as Element).closest<Element>("[data-region]");
    if (!target) return;
    const region = target.getAttribute("data-region");
    void poller.selectRegion(region === poller.state.region ? null : region);
  });

  poller.start();
}

document.addEventListener("DOMContentLoaded", init);
