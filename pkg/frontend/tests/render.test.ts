import { describe, expect, it } from "vitest";

import type { AlarmDetail, DiffRow, Prediction } from "../src/api.js";
import {
  escapeHtml,
  renderBanner,
  renderDiff,
  renderPredictionPanel,
  renderQueue,
  routeBadge,
} from "../src/render.js";
import { initialState, setConnectionError, setQueue } from "../src/state.js";

function prediction(overrides: Partial<Prediction> = {}): Prediction {
  return {
    cause: "C3",
    route: "low_similarity",
    confidence: 0.586,
    exemplar_id: "his4",
    vote_score: 1.114,
    top_k: [],
    ...overrides,
  };
}

function detail(overrides: Partial<AlarmDetail> = {}): AlarmDetail {
  return {
    alarm_id: "a1",
    function_point: "AUS",
    day: 3,
    verified: false,
    cause: null,
    submitted_at: "2015-06-28T00:00:00Z",
    prediction: prediction(),
    diff: [],
    version: 1,
    ...overrides,
  };
}

describe("route badge", () => {
  it("labels the high-similarity route as a trusted top-1 match", () => {
    const html = routeBadge(prediction({ route: "high_similarity" }));
    expect(html).toContain("top-1 match");
  });

  it("labels the low-similarity route as a k-NN vote with the summed score", () => {
    const html = routeBadge(prediction());
    expect(html).toContain("k-NN vote");
    expect(html).toContain("1.114");
  });
});

describe("queue rendering", () => {
  it("shows an empty state for an empty corpus", () => {
    expect(renderQueue(initialState())).toContain("empty-state");
  });

  it("renders one row per pending alarm with a cause badge", () => {
    const state = setQueue(
      initialState(),
      [
        { alarm_id: "a1", function_point: "F", day: 1, verified: false, cause: null, predicted_cause: "C2", confidence: 0.9 },
        { alarm_id: "a2", function_point: "F", day: 1, verified: false, cause: null, predicted_cause: "C3", confidence: 0.4 },
        { alarm_id: "a3", function_point: "G", day: 2, verified: false, cause: null, predicted_cause: "C2", confidence: 0.8 },
      ],
      1,
    );
    const html = renderQueue(state);
    expect(html.match(/queue-row/g)).toHaveLength(3);
    expect(html).toContain(`data-alarm-id="a2"`);
    expect(html.match(/cause-badge/g)).toHaveLength(3);
  });
});

describe("diff rendering", () => {
  const rows: DiffRow[] = [
    { left: "same line", right: "same line", op: "equal", hl: false },
    { left: "new only", right: null, op: "delete", hl: true },
    { left: "changed here", right: "changed there", op: "change", hl: true },
  ];

  it("highlights exactly the rows the service flagged", () => {
    const html = renderDiff(rows);
    expect(html.match(/class="hl"/g)).toHaveLength(2);
    expect(html.match(/<tr/g)).toHaveLength(4); // header + 3 rows
  });

  it("puts highlighted rows first, keeping original indices", () => {
    const html = renderDiff(rows);
    const order = [...html.matchAll(/data-row="(\d+)"/g)].map((m) => m[1]);
    expect(order).toEqual(["1", "2", "0"]);
  });

  it("announces identical logs", () => {
    const equal: DiffRow[] = [
      { left: "x", right: "x", op: "equal", hl: false },
    ];
    expect(renderDiff(equal)).toContain("No differences");
  });

  it("escapes log content", () => {
    const html = renderDiff([
      { left: `<script>alert(1)</script>`, right: null, op: "delete", hl: true },
    ]);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("prediction panel", () => {
  it("shows the service confidence verbatim and both verdict actions", () => {
    const html = renderPredictionPanel(detail(), ["C1", "C2", "C3"]);
    expect(html).toContain("58.6%");
    expect(html).toContain("accept C3");
    expect(html).toContain("cause-picker");
    expect(html.match(/<option/g)).toHaveLength(3);
    expect(html).toContain("exemplar his4");
  });
});

describe("connection banner", () => {
  it("offers a retry and never renders when healthy", () => {
    expect(renderBanner(initialState())).toBe("");
    const html = renderBanner(setConnectionError(initialState(), "down"));
    expect(html).toContain("retry");
    expect(html).toContain("down");
  });
});

it("escapeHtml neutralizes markup", () => {
  expect(escapeHtml(`<a href="x">&</a>`)).toBe(
    "&lt;a href=&quot;x&quot;&gt;&amp;&lt;/a&gt;",
  );
});
