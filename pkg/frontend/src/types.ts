/** Wire shapes of the /api endpoints, mirroring the server's published schemas. */

export interface NodeSummary {
  id: number;
  title: string;
  speaker: string;
  views: number;
  sentiment_norm: number | null;
  community: number;
}

export interface GraphLink {
  source: number;
  target: number;
  similarity: number;
}

export interface GraphDocument {
  nodes: NodeSummary[];
  links: GraphLink[];
}

export interface TalkMeta {
  id: number;
  title: string;
  speaker: string;
  tags: string[];
  views: number;
  url: string;
}

export interface SentimentBlock {
  score: number | null;
  normalized: number | null;
  matched_tokens: number;
  total_tokens: number;
  coverage: number;
}

export interface CloudEntry {
  word: string;
  weight: number;
}

export interface Recommendation {
  id: number;
  title: string;
  similarity: number;
}

export interface TalkDetail {
  meta: TalkMeta;
  sentiment: SentimentBlock;
  wordcloud: CloudEntry[];
  recommendations: Recommendation[];
}

export interface ArtifactMeta {
  format_version: number;
  fingerprint: string;
  n_talks: number;
  dim: number;
  n_edges: number;
  edge_fraction: number;
  n_communities: number;
  modularity: number;
  config: Record<string, unknown>;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
