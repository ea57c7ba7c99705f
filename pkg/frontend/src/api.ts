import type {
    CheckReply,
    GraphDoc,
    MoveOption,
    PresetEntry,
    ScrambleReply,
    SolveReply,
    StateDoc,
} from "./types.js";

export class ApiError extends Error {
    constructor(public status: number, detail: string) {
        super(detail);
    }
}

/** Thin typed client; every call ships the full board + state documents
 *  because the server keeps no sessions. */
export class Api {
    constructor(private base: string = "") {}

    private async post<T>(path: string, body: unknown): Promise<T> {
        const res = await fetch(this.base + path, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
        if (!res.ok) {
            let detail = res.statusText;
            try {
                detail = (await res.json()).detail ?? detail;
            } catch {
                /* non-JSON error body */
            }
            throw new ApiError(res.status, detail);
        }
        return res.json() as Promise<T>;
    }

    async presets(): Promise<PresetEntry[]> {
        const res = await fetch(this.base + "/api/presets");
        if (!res.ok) throw new ApiError(res.status, res.statusText);
        return (await res.json()).presets;
    }

    moves(graph: GraphDoc, state: StateDoc): Promise<{ moves: MoveOption[] }> {
        return this.post("/api/moves", { graph, state });
    }

    apply(graph: GraphDoc, state: StateDoc, move: string): Promise<{ state: StateDoc }> {
        return this.post("/api/apply", { graph, state, move });
    }

    check(graph: GraphDoc, state: StateDoc): Promise<CheckReply> {
        return this.post("/api/check", { graph, state });
    }

    solve(graph: GraphDoc, state: StateDoc, cap?: number): Promise<SolveReply> {
        return this.post("/api/solve", { graph, state, cap });
    }

    scramble(graph: GraphDoc, state: StateDoc, steps: number, seed: number): Promise<ScrambleReply> {
        return this.post("/api/scramble", { graph, state, steps, seed });
    }
}
