// Everything the UI decides without touching the DOM lives here, so the
// test suite can drive it headlessly against the real service.

import type {
    CheckReply,
    GraphDoc,
    MoveOption,
    PresetEntry,
    ScrambleReply,
    SolveReply,
    StateDoc,
} from "./types.js";

/** The slice of the HTTP client a board session actually drives. */
export interface EngineClient {
    moves(graph: GraphDoc, state: StateDoc): Promise<{ moves: MoveOption[] }>;
    apply(graph: GraphDoc, state: StateDoc, move: string): Promise<{ state: StateDoc }>;
    check(graph: GraphDoc, state: StateDoc): Promise<CheckReply>;
    solve(graph: GraphDoc, state: StateDoc, cap?: number): Promise<SolveReply>;
    scramble(graph: GraphDoc, state: StateDoc, steps: number, seed: number): Promise<ScrambleReply>;
}

export type Badge = "checking" | "solvable" | "unsolvable" | "undecided";

export interface Layout {
    coords: Record<string, [number, number]>; // normalized into the unit square
    generated: boolean; // true when we had to invent a circular layout
}

export function layoutOf(graph: GraphDoc): Layout {
    const coords: Record<string, [number, number]> = {};
    if (graph.vertices.every((v) => typeof v.x === "number" && typeof v.y === "number")) {
        const xs = graph.vertices.map((v) => v.x as number);
        const ys = graph.vertices.map((v) => v.y as number);
        const span = (lo: number, hi: number) => (hi - lo > 1e-9 ? hi - lo : 1);
        const [x0, y0] = [Math.min(...xs), Math.min(...ys)];
        const [sx, sy] = [span(x0, Math.max(...xs)), span(y0, Math.max(...ys))];
        for (const v of graph.vertices) {
            coords[v.id] = [
                sx === 1 && Math.max(...xs) === x0 ? 0.5 : ((v.x as number) - x0) / sx,
                sy === 1 && Math.max(...ys) === y0 ? 0.5 : ((v.y as number) - y0) / sy,
            ];
        }
        return { coords, generated: false };
    }
    const n = graph.vertices.length;
    graph.vertices.forEach((v, i) => {
        const a = (2 * Math.PI * i) / n - Math.PI / 2;
        coords[v.id] = [0.5 + 0.42 * Math.cos(a), 0.5 + 0.42 * Math.sin(a)];
    });
    return { coords, generated: true };
}

// -- pop-out edits: states no move sequence reaches, built client-side ------

export function swapTiles(state: StateDoc, a: string, b: string): StateDoc {
    const tiles = state.tiles.map((t) => ({ ...t }));
    const ta = tiles.find((t) => t.at === a);
    const tb = tiles.find((t) => t.at === b);
    if (!ta || !tb || a === b) throw new Error("swap needs two distinct occupied spots");
    ta.at = b;
    tb.at = a;
    return { format: "twiststate/1", blank: state.blank, tiles };
}

export function rotateTile(state: StateDoc, at: string, delta: number, m: number): StateDoc {
    const tiles = state.tiles.map((t) => ({ ...t }));
    const t = tiles.find((x) => x.at === at);
    if (!t) throw new Error(`no tile at ${at}`);
    t.rot = ((t.rot + delta) % m + m) % m;
    return { format: "twiststate/1", blank: state.blank, tiles };
}

export function statesEqual(a: StateDoc, b: StateDoc): boolean {
    if (a.blank !== b.blank || a.tiles.length !== b.tiles.length) return false;
    const key = (t: { tile: string; at: string; rot: number }) => `${t.at}|${t.tile}|${t.rot}`;
    return [...a.tiles].map(key).sort().join() === [...b.tiles].map(key).sort().join();
}

/** Chains async actions so at most one service call is in flight; later
 *  actions queue behind earlier ones in arrival order. */
export class ActionQueue {
    private tail: Promise<void> = Promise.resolve();
    private depth = 0;

    get busy(): boolean {
        return this.depth > 0;
    }

    run<T>(fn: () => Promise<T>): Promise<T> {
        this.depth += 1;
        const out = this.tail.then(fn);
        this.tail = out.then(
            () => void (this.depth -= 1),
            () => void (this.depth -= 1),
        );
        return out;
    }
}

export interface SessionEvents {
    changed?: () => void; // state/graph/badge/anything visible changed
    illegal?: (why: string) => void; // user clicked something that is not a move
}

export class BoardSession {
    graph: GraphDoc;
    state: StateDoc;
    initial: StateDoc;
    badge: Badge = "checking";
    caseName = "";
    legal: MoveOption[] = [];
    pendingSolution: string[] = [];
    editMode = false;
    editSelection: string | null = null;
    queue = new ActionQueue();

    constructor(
        private api: EngineClient,
        preset: PresetEntry,
        private events: SessionEvents = {},
    ) {
        this.graph = preset.graph;
        this.state = preset.state;
        this.initial = preset.state;
    }

    private emit() {
        this.events.changed?.();
    }

    /** Replace the displayed state, re-derive legal moves and the badge. */
    private async adopt(state: StateDoc, dropSolution = true) {
        this.state = state;
        if (dropSolution) this.pendingSolution = [];
        this.badge = "checking";
        this.emit();
        const [moves, check] = await Promise.all([
            this.api.moves(this.graph, state),
            this.api.check(this.graph, state),
        ]);
        this.legal = moves.moves;
        this.badge = check.undecided ? "undecided" : check.solvable ? "solvable" : "unsolvable";
        this.caseName = check.case ?? "";
        this.emit();
    }

    refresh(): Promise<void> {
        return this.queue.run(() => this.adopt(this.state));
    }

    /** Click on a vertex: a legal-move destination slides a tile; in edit
     *  mode it selects/swaps; anything else is reported as illegal. */
    clickVertex(v: string): Promise<void> {
        return this.queue.run(async () => {
            if (this.editMode) {
                await this.editClick(v);
                return;
            }
            const chosen = this.legal.find((o) => o.to === v);
            if (!chosen) {
                this.events.illegal?.(`no legal move onto ${v}`);
                return;
            }
            const res = await this.api.apply(this.graph, this.state, chosen.move);
            await this.adopt(res.state);
        });
    }

    private async editClick(v: string): Promise<void> {
        if (v === this.state.blank) {
            this.events.illegal?.("the blank cannot be edited");
            return;
        }
        if (this.editSelection === null) {
            this.editSelection = v;
            this.emit();
            return;
        }
        if (this.editSelection === v) {
            this.editSelection = null;
            this.emit();
            return;
        }
        const next = swapTiles(this.state, this.editSelection, v);
        this.editSelection = null;
        await this.adopt(next);
    }

    /** Edit-mode rotation of the tile at v by one notch. */
    rotateAt(v: string, delta = 1): Promise<void> {
        return this.queue.run(async () => {
            if (!this.editMode) {
                this.events.illegal?.("rotation edits need edit mode");
                return;
            }
            if (v === this.state.blank) {
                this.events.illegal?.("the blank cannot be rotated");
                return;
            }
            await this.adopt(rotateTile(this.state, v, delta, this.graph.m));
        });
    }

    setEditMode(on: boolean): void {
        this.editMode = on;
        this.editSelection = null;
        this.emit();
    }

    scramble(steps: number, seed: number): Promise<void> {
        return this.queue.run(async () => {
            const res = await this.api.scramble(this.graph, this.state, steps, seed);
            await this.adopt(res.state);
        });
    }

    reset(): Promise<void> {
        return this.queue.run(() => this.adopt(this.initial));
    }

    /** Fetch a shortest solution and hold it for step-by-step replay. */
    requestSolution(): Promise<string[] | null> {
        return this.queue.run(async () => {
            const res = await this.api.solve(this.graph, this.state);
            if (res.undecided || res.status !== "solved" || res.moves === null) {
                this.pendingSolution = [];
                this.emit();
                return null;
            }
            this.pendingSolution = [...res.moves];
            this.emit();
            return res.moves;
        });
    }

    /** Play the next stored solution move, if any. */
    stepSolution(): Promise<boolean> {
        return this.queue.run(async () => {
            const move = this.pendingSolution[0];
            if (!move) return false;
            const res = await this.api.apply(this.graph, this.state, move);
            this.pendingSolution = this.pendingSolution.slice(1);
            await this.adopt(res.state, false);
            return true;
        });
    }

    get solved(): boolean {
        return statesEqual(this.state, this.initial);
    }
}
