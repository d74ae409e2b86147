export {
  renderBands,
  renderDiracMap,
  renderEtaLine,
  renderPhaseHeatmap,
  renderSpectrumMap,
} from "./render.js";
export {
  diracDocSchema,
  parseBandsCsv,
  parseDocument,
  phaseDiagramSchema,
  SchemaError,
  spectrumMapSchema,
} from "./schema.js";
export { divergingColor, sequentialColor } from "./colormap.js";
export { main, parseArgs, renderFile } from "./cli.js";
