// Shapes of the wbkit service responses (see wbkit.service.SCHEMAS).

export type Span = [number, number];

export interface SchemeInfo {
  id: string;
  provenance: string;
}

export interface SchemesResponse {
  schemes: SchemeInfo[];
  sentence_count: number;
}

export interface ApiToken {
  id: number;
  form: string;
  span: Span;
  upos: string | null;
  xpos: string | null;
}

export interface ApiEdge {
  dependent: number;
  head: number; // 0 = root
  deprel: string | null;
}

export interface ParseResponse {
  scheme: string;
  index: number;
  sent_id: string | null;
  text: string;
  tokens: ApiToken[];
  edges: ApiEdge[];
}

export type EditKind = "identical" | "merge" | "split" | "divergent";

export interface DiffEdit {
  kind: EditKind;
  left_ids: number[];
  right_ids: number[];
  span: Span;
}

export type HeadSpan = Span | "root" | null;

export type Agreement = "both" | "head-only" | "neither";

export interface DiffEdge {
  dependent_span: Span;
  left_head_span: HeadSpan;
  right_head_span: HeadSpan;
  left_label: string | null;
  right_label: string | null;
  agreement: Agreement;
}

export interface DiffSummary {
  identical: number;
  merge: number;
  split: number;
  divergent: number;
  agree_both: number;
  agree_head_only: number;
  agree_neither: number;
  incomparable: number;
}

export interface DiffResponse {
  left: string;
  right: string;
  index: number;
  edits: DiffEdit[];
  edges: DiffEdge[];
  summary: DiffSummary;
}

export interface SegSummary {
  gold_spans: number;
  pred_spans: number;
  matched: number;
  precision: number;
  recall: number;
  f1: number;
}

export interface AttachmentSummary {
  token_total: number;
  head_correct: number;
  head_and_label_correct: number;
  uas: number;
  las: number;
}

export interface EvalResponse {
  left: string;
  right: string;
  segmentation: SegSummary;
  attachment: AttachmentSummary | null;
  attachment_skipped_reason: string | null;
}
