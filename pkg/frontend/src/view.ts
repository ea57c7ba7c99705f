// SVG board + control strip.  All mutations flow through the BoardSession;
// this file only draws what the session says and forwards clicks.

import type { BoardSession } from "./controller.js";
import { layoutOf } from "./controller.js";

const SVG = "http://www.w3.org/2000/svg";
const SIZE = 640;

function el<K extends keyof SVGElementTagNameMap>(
    tag: K,
    attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
    const node = document.createElementNS(SVG, tag);
    for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
    return node;
}

export class BoardView {
    private flashTimer: number | undefined;

    constructor(
        private svg: SVGSVGElement,
        private badgeEl: HTMLElement,
        private noticeEl: HTMLElement,
        private session: BoardSession,
    ) {}

    flashIllegal(why: string) {
        this.noticeEl.textContent = why;
        this.noticeEl.classList.add("flash");
        window.clearTimeout(this.flashTimer);
        this.flashTimer = window.setTimeout(() => {
            this.noticeEl.classList.remove("flash");
            this.redrawNotice();
        }, 900);
    }

    private redrawNotice() {
        const layout = layoutOf(this.session.graph);
        this.noticeEl.textContent = layout.generated
            ? "board ships no layout — showing an automatic circular arrangement"
            : "";
    }

    redraw() {
        const s = this.session;
        const layout = layoutOf(s.graph);
        const pt = (v: string): [number, number] => [
            40 + layout.coords[v][0] * (SIZE - 80),
            40 + layout.coords[v][1] * (SIZE - 80),
        ];

        this.svg.innerHTML = "";
        this.redrawNotice();

        // edges under the tiles; twisted ones dashed with their twist label
        const parallel = new Map<string, number>();
        for (const e of s.graph.edges) {
            const [x1, y1] = pt(e.tail);
            const [x2, y2] = pt(e.head);
            const pairKey = [e.tail, e.head].sort().join("~");
            const seen = parallel.get(pairKey) ?? 0;
            parallel.set(pairKey, seen + 1);
            // bow parallel edges apart so both stay visible
            const mx = (x1 + x2) / 2 + (seen ? (seen % 2 ? 1 : -1) * 14 * Math.ceil(seen / 2) : 0);
            const my = (y1 + y2) / 2 + (seen ? (seen % 2 ? -1 : 1) * 14 * Math.ceil(seen / 2) : 0);
            const path = el("path", {
                d: `M ${x1} ${y1} Q ${mx} ${my} ${x2} ${y2}`,
                class: e.twist ? "edge twisted" : "edge",
                fill: "none",
            });
            this.svg.appendChild(path);
            if (e.twist) {
                const label = el("text", { x: mx, y: my - 4, class: "twist-label" });
                label.textContent = `+${e.twist}`;
                this.svg.appendChild(label);
            }
        }

        const targets = new Set(s.legal.map((o) => o.to));
        const tileAt = new Map(s.state.tiles.map((t) => [t.at, t]));

        for (const { id: v } of s.graph.vertices) {
            const [x, y] = pt(v);
            const tile = tileAt.get(v);
            const group = el("g", { class: "vertex", transform: `translate(${x} ${y})` });

            const classes = ["spot"];
            if (v === s.state.blank) classes.push("blank");
            if (!s.editMode && targets.has(v)) classes.push("target");
            if (s.editMode && v !== s.state.blank) classes.push("editable");
            if (s.editSelection === v) classes.push("selected");
            group.appendChild(el("circle", { r: 24, class: classes.join(" ") }));

            if (tile) {
                const name = el("text", { y: 5, class: "tile-name" });
                name.textContent = tile.tile;
                group.appendChild(name);
                // rotation glyph: a tick rotated by the tile's fraction of a turn
                const angle = (360 * tile.rot) / s.graph.m;
                group.appendChild(
                    el("line", {
                        x1: 0,
                        y1: -14,
                        x2: 0,
                        y2: -22,
                        class: tile.rot ? "glyph turned" : "glyph",
                        transform: `rotate(${angle})`,
                    }),
                );
                const rotText = el("text", { y: 16, class: "rot-label" });
                rotText.textContent = tile.rot ? `${(360 * tile.rot) / s.graph.m}°` : "0";
                group.appendChild(rotText);
            }

            group.addEventListener("click", () => void s.clickVertex(v));
            group.addEventListener("contextmenu", (ev) => {
                ev.preventDefault();
                void s.rotateAt(v);
            });
            this.svg.appendChild(group);
        }

        const badgeText = {
            checking: "checking…",
            solvable: "SOLVABLE",
            unsolvable: "UNSOLVABLE",
            undecided: "UNDECIDED",
        }[s.badge];
        this.badgeEl.textContent = s.caseName ? `${badgeText} · ${s.caseName}` : badgeText;
        this.badgeEl.className = `badge ${s.badge}`;
    }
}
