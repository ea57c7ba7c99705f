// Wire formats, mirroring the service's JSON documents.

export interface EdgeDoc {
    id: string;
    tail: string;
    head: string;
    twist: number;
}

export interface VertexDoc {
    id: string;
    x?: number;
    y?: number;
}

export interface GraphDoc {
    format: "twistgraph/1";
    m: number;
    vertices: VertexDoc[];
    edges: EdgeDoc[];
    home?: string;
}

export interface TileDoc {
    tile: string;
    at: string;
    rot: number;
}

export interface StateDoc {
    format: "twiststate/1";
    blank: string;
    tiles: TileDoc[];
}

export interface PresetEntry {
    name: string;
    title: string;
    graph: GraphDoc;
    state: StateDoc;
}

export interface MoveOption {
    move: string;
    edge: string;
    to: string;
}

export interface CheckReply {
    undecided: boolean;
    solvable: boolean | null;
    case?: string;
    order?: string;
    reason?: string;
}

export interface SolveReply {
    undecided: boolean;
    status: string;
    moves: string[] | null;
    length: number | null;
}

export interface ScrambleReply {
    state: StateDoc;
    moves: string[];
}
