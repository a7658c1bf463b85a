/** Force-directed similarity network on an SVG element.
 *
 * Node color encodes sentiment (blue -> red, gray when unscored), node
 * radius grows with sqrt(views), and nodes start clustered by community
 * (deterministic initial positions). Zooming out below a threshold thins
 * the weakest links so the full graph stays responsive.
 */

import * as d3 from "d3";

import { nodeRadius, sentimentColor } from "./color";
import { initialPosition, visibleLinkFraction } from "./layout";
import type { GraphDocument, NodeSummary } from "./types";

export interface GraphCallbacks {
  onHover(id: number | null): void;
  onSelect(id: number): void;
}

export interface GraphViewOptions {
  width?: number;
  height?: number;
  /** Run the simulation on its own clock; tests drive settle() instead. */
  autorun?: boolean;
}

interface SimNode extends d3.SimulationNodeDatum {
  data: NodeSummary;
  radius: number;
}

interface SimLink extends d3.SimulationLinkDatum<SimNode> {
  similarity: number;
  /** 0 for the strongest link, approaching 1 for the weakest. */
  rankFraction: number;
}

export class GraphView {
  private readonly width: number;
  private readonly height: number;
  private readonly autorun: boolean;
  private readonly viewport: d3.Selection<SVGGElement, unknown, null, undefined>;
  private readonly linkGroup: d3.Selection<SVGGElement, unknown, null, undefined>;
  private readonly nodeGroup: d3.Selection<SVGGElement, unknown, null, undefined>;
  private simulation: d3.Simulation<SimNode, SimLink> | null = null;
  private zoomScale = 1;

  constructor(
    svg: SVGSVGElement,
    private readonly callbacks: GraphCallbacks,
    options: GraphViewOptions = {},
  ) {
    this.width = options.width ?? 900;
    this.height = options.height ?? 700;
    this.autorun = options.autorun ?? true;

    const root = d3
      .select(svg)
      .attr("width", this.width)
      .attr("height", this.height)
      .attr("viewBox", `0 0 ${this.width} ${this.height}`);
    this.viewport = root.append("g").attr("class", "viewport");
    this.linkGroup = this.viewport.append("g").attr("class", "links");
    this.nodeGroup = this.viewport.append("g").attr("class", "nodes");

    root.call(
      d3
        .zoom<SVGSVGElement, unknown>()
        .scaleExtent([0.2, 8])
        .on("zoom", (event: d3.D3ZoomEvent<SVGSVGElement, unknown>) => {
          this.viewport.attr("transform", event.transform.toString());
          this.setZoomScale(event.transform.k);
        }),
    );
  }

  render(graphDocument: GraphDocument): void {
    this.simulation?.stop();

    const communityCount =
      new Set(graphDocument.nodes.map((node) => node.community)).size || 1;
    const maxViews = Math.max(0, ...graphDocument.nodes.map((node) => node.views));

    const nodes: SimNode[] = graphDocument.nodes.map((data) => ({
      data,
      radius: nodeRadius(data.views, maxViews),
      ...initialPosition(data, communityCount, this.width, this.height),
    }));

    const bySimilarity = [...graphDocument.links].sort(
      (a, b) => b.similarity - a.similarity,
    );
    const rankOf = new Map(bySimilarity.map((link, rank) => [link, rank]));
    const links: SimLink[] = graphDocument.links.map((link) => ({
      source: link.source,
      target: link.target,
      similarity: link.similarity,
      rankFraction:
        graphDocument.links.length > 1
          ? (rankOf.get(link) ?? 0) / (graphDocument.links.length - 1)
          : 0,
    }));

    this.linkGroup
      .selectAll("line")
      .data(links)
      .join("line")
      .attr("class", "link")
      .attr("stroke-width", (link) => 0.5 + 1.5 * Math.max(0, link.similarity));

    this.nodeGroup
      .selectAll<SVGCircleElement, SimNode>("circle")
      .data(nodes, (node) => node.data.id)
      .join("circle")
      .attr("class", "node")
      .attr("data-id", (node) => node.data.id)
      .attr("data-community", (node) => node.data.community)
      .attr("r", (node) => node.radius)
      .attr("fill", (node) => sentimentColor(node.data.sentiment_norm))
      .on("mouseenter", (_event, node) => this.callbacks.onHover(node.data.id))
      .on("mouseleave", () => this.callbacks.onHover(null))
      .on("click", (_event, node) => this.callbacks.onSelect(node.data.id));

    this.simulation = d3
      .forceSimulation(nodes)
      .force(
        "link",
        d3
          .forceLink<SimNode, SimLink>(links)
          .id((node) => node.data.id)
          .distance(55)
          .strength((link) => 0.2 + 0.6 * Math.max(0, link.similarity)),
      )
      .force("charge", d3.forceManyBody().strength(-60))
      .force("center", d3.forceCenter(this.width / 2, this.height / 2))
      .force("collide", d3.forceCollide<SimNode>((node) => node.radius + 2));

    if (this.autorun) {
      this.simulation.on("tick", () => this.positionElements());
    } else {
      this.simulation.stop();
    }
    this.positionElements();
    this.applyThinning();
  }

  /** Advance the layout synchronously (used by tests and screenshots). */
  settle(ticks: number): void {
    this.simulation?.tick(ticks);
    this.positionElements();
  }

  setZoomScale(scale: number): void {
    this.zoomScale = scale;
    this.applyThinning();
  }

  private applyThinning(): void {
    const visible = visibleLinkFraction(this.zoomScale);
    this.linkGroup
      .selectAll<SVGLineElement, SimLink>("line")
      .style("display", (link) => (link.rankFraction <= visible ? null : "none"));
  }

  private positionElements(): void {
    this.nodeGroup
      .selectAll<SVGCircleElement, SimNode>("circle")
      .attr("cx", (node) => node.x ?? 0)
      .attr("cy", (node) => node.y ?? 0);
    this.linkGroup
      .selectAll<SVGLineElement, SimLink>("line")
      .attr("x1", (link) => (link.source as SimNode).x ?? 0)
      .attr("y1", (link) => (link.source as SimNode).y ?? 0)
      .attr("x2", (link) => (link.target as SimNode).x ?? 0)
      .attr("y2", (link) => (link.target as SimNode).y ?? 0);
  }
}
