import { Api } from "./api.js";
import { BoardSession } from "./controller.js";
import { BoardView } from "./view.js";
import type { PresetEntry } from "./types.js";

const api = new Api("");

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;

async function boot() {
    const presets = await api.presets();
    const select = $<HTMLSelectElement>("preset");
    for (const p of presets) {
        const opt = document.createElement("option");
        opt.value = p.name;
        opt.textContent = p.title;
        select.appendChild(opt);
    }

    let session: BoardSession;
    let view: BoardView;

    function load(preset: PresetEntry) {
        session = new BoardSession(api, preset, {
            changed: () => view.redraw(),
            illegal: (why) => view.flashIllegal(why),
        });
        view = new BoardView(
            $("board") as unknown as SVGSVGElement,
            $("badge"),
            $("notice"),
            session,
        );
        view.redraw();
        void session.refresh();
    }

    select.addEventListener("change", () => {
        const p = presets.find((x) => x.name === select.value);
        if (p) load(p);
    });

    $("scramble").addEventListener("click", () => {
        const steps = Number(($<HTMLInputElement>("steps")).value) || 25;
        const seed = Number(($<HTMLInputElement>("seed")).value) || 0;
        void session.scramble(steps, seed);
    });

    $("reset").addEventListener("click", () => void session.reset());

    const editToggle = $<HTMLInputElement>("editmode");
    editToggle.addEventListener("change", () => session.setEditMode(editToggle.checked));

    $("solve").addEventListener("click", async () => {
        const moves = await session.requestSolution();
        $("stepinfo").textContent =
            moves === null ? "no solution available" : `${moves.length} moves queued — press Step`;
    });

    $("step").addEventListener("click", async () => {
        const more = await session.stepSolution();
        const left = session.pendingSolution.length;
        $("stepinfo").textContent = !more
            ? "nothing to replay"
            : left
              ? `${left} moves left`
              : "replay finished";
    });

    load(presets[0]);
}

void boot();
