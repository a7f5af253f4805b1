/** Perceptually uniform palette for the contour maps (33 anchors, lerped). */

const VIRIDIS: [number, number, number][] = [
  [0.267004, 0.004874, 0.329415],
  [0.277018, 0.050344, 0.375715],
  [0.282327, 0.094955, 0.417331],
  [0.282884, 0.13592, 0.453427],
  [0.278826, 0.17549, 0.483397],
  [0.270595, 0.214069, 0.507052],
  [0.258965, 0.251537, 0.524736],
  [0.244972, 0.287675, 0.53726],
  [0.229739, 0.322361, 0.545706],
  [0.214298, 0.355619, 0.551184],
  [0.19943, 0.387607, 0.554642],
  [0.185556, 0.41857, 0.556753],
  [0.172719, 0.448791, 0.557885],
  [0.160665, 0.47854, 0.558115],
  [0.149039, 0.508051, 0.55725],
  [0.13777, 0.537492, 0.554906],
  [0.127568, 0.566949, 0.550556],
  [0.120565, 0.596422, 0.543611],
  [0.120638, 0.625828, 0.533488],
  [0.132268, 0.655014, 0.519661],
  [0.157851, 0.683765, 0.501686],
  [0.196571, 0.711827, 0.479221],
  [0.24607, 0.73891, 0.452024],
  [0.304148, 0.764704, 0.419943],
  [0.369214, 0.788888, 0.382914],
  [0.440137, 0.811138, 0.340967],
  [0.515992, 0.831158, 0.294279],
  [0.595839, 0.848717, 0.243329],
  [0.678489, 0.863742, 0.189503],
  [0.762373, 0.876424, 0.137064],
  [0.845561, 0.887322, 0.099702],
  [0.926106, 0.89733, 0.104071],
  [0.993248, 0.906157, 0.143936],
];

/** Map t in [0, 1] to an [r, g, b] byte triple along the palette. */
export function viridis(t: number): [number, number, number] {
  const x = Math.min(1, Math.max(0, t)) * (VIRIDIS.length - 1);
  const i = Math.min(VIRIDIS.length - 2, Math.floor(x));
  const f = x - i;
  const lo = VIRIDIS[i];
  const hi = VIRIDIS[i + 1];
  return [
    Math.round(255 * (lo[0] + f * (hi[0] - lo[0]))),
    Math.round(255 * (lo[1] + f * (hi[1] - lo[1]))),
    Math.round(255 * (lo[2] + f * (hi[2] - lo[2]))),
  ];
}

export function rgbHex(rgb: [number, number, number]): string {
  return "#" + rgb.map((v) => v.toString(16).padStart(2, "0")).join("");
}

/** Fixed line colors for trace/curve series. */
export const SERIES_COLORS = [
  "#c3423f",
  "#2e5eaa",
  "#d9a404",
  "#6b2d8b",
  "#1f7a5c",
  "#72451f",
  "#3d3d3d",
  "#9a3f86",
];
