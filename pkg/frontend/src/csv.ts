/** Reader for the sweep results CSV produced by the experiment harness. */

export const CSV_HEADER =
  "model,density,corr_mode,n,class,mean_prob,std_prob,replicates";

export interface SweepRow {
  model: string;
  density: string;
  corrMode: string;
  n: number;
  cls: number;
  meanProb: number;
  stdProb: number;
  replicates: number;
}

export class CsvFormatError extends Error {
  constructor(line: number, detail: string) {
    super(`line ${line}: ${detail}`);
    this.name = "CsvFormatError";
  }
}

function parseNumber(
  field: string,
  name: string,
  line: number,
  integer: boolean,
): number {
  const value = Number(field);
  if (field.trim() === "" || Number.isNaN(value)) {
    throw new CsvFormatError(line, `${name} is not a number: ${JSON.stringify(field)}`);
  }
  if (integer && !Number.isInteger(value)) {
    throw new CsvFormatError(line, `${name} is not an integer: ${JSON.stringify(field)}`);
  }
  return value;
}

/**
 * Parse CSV text into rows. Throws CsvFormatError with a 1-based line number
 * on a bad header or malformed record. A header-only file (zero data rows) is
 * also an error: there is nothing to plot.
 */
export function parseResults(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() !== CSV_HEADER) {
    throw new CsvFormatError(1, `expected header ${JSON.stringify(CSV_HEADER)}`);
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue;
    const fields = line.split(",");
    const lineno = i + 1;
    if (fields.length !== 8) {
      throw new CsvFormatError(lineno, `expected 8 fields, got ${fields.length}`);
    }
    rows.push({
      model: fields[0],
      density: fields[1],
      corrMode: fields[2],
      n: parseNumber(fields[3], "n", lineno, true),
      cls: parseNumber(fields[4], "class", lineno, true),
      meanProb: parseNumber(fields[5], "mean_prob", lineno, false),
      stdProb: parseNumber(fields[6], "std_prob", lineno, false),
      replicates: parseNumber(fields[7], "replicates", lineno, true),
    });
  }
  if (rows.length === 0) {
    throw new CsvFormatError(2, "no data rows (header-only file)");
  }
  return rows;
}
