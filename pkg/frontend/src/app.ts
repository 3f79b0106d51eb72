// DOM wiring. This layer only copies view-model fields into elements and
// forwards clicks to the API client; one mutation is in flight at a time.

import { ApiError, Client, type QuestionShape, type ResponderSpec } from "./api.js";
import { buildViewModel, type ViewModel } from "./viewmodel.js";

interface Elements {
  setupPanel: HTMLElement;
  gamePanel: HTMLElement;
  mode: HTMLSelectElement;
  size: HTMLInputElement;
  responderMode: HTMLSelectElement;
  secret: HTMLInputElement;
  lieAt: HTMLInputElement;
  honestFields: HTMLElement;
  startButton: HTMLButtonElement;
  setupError: HTMLElement;
  banner: HTMLElement;
  statA: HTMLElement;
  statB: HTMLElement;
  statWeight: HTMLElement;
  statRemaining: HTMLElement;
  statAsked: HTMLElement;
  meterFill: HTMLElement;
  meterLabel: HTMLElement;
  questionHeading: HTMLElement;
  questionText: HTMLElement;
  questionTag: HTMLElement;
  lieHint: HTMLElement;
  answerButtons: HTMLElement;
  yesButton: HTMLButtonElement;
  noButton: HTMLButtonElement;
  builder: HTMLElement;
  builderKind: HTMLSelectElement;
  builderIds: HTMLInputElement;
  builderLo: HTMLInputElement;
  builderHi: HTMLInputElement;
  builderBit: HTMLInputElement;
  askButton: HTMLButtonElement;
  machineAnswer: HTMLElement;
  gameError: HTMLElement;
  transcriptBody: HTMLElement;
  exportButton: HTMLButtonElement;
  newGameButton: HTMLButtonElement;
}

export class App {
  private vm: ViewModel | null = null;
  private inFlight = false;

  constructor(
    private readonly client: Client,
    private readonly el: Elements,
    private readonly download: (name: string, text: string) => void,
  ) {
    el.startButton.addEventListener("click", () => void this.start());
    el.yesButton.addEventListener("click", () => void this.answer("yes"));
    el.noButton.addEventListener("click", () => void this.answer("no"));
    el.askButton.addEventListener("click", () => void this.ask());
    el.exportButton.addEventListener("click", () => this.exportTranscript());
    el.newGameButton.addEventListener("click", () => this.showSetup());
    el.mode.addEventListener("change", () => this.syncSetupFields());
    el.responderMode.addEventListener("change", () => this.syncSetupFields());
    this.syncSetupFields();
  }

  private syncSetupFields(): void {
    const humanAsks = this.el.mode.value === "human_asks";
    this.el.responderMode.parentElement!.hidden = !humanAsks;
    this.el.honestFields.hidden = !(humanAsks && this.el.responderMode.value === "honest");
  }

  private showSetup(): void {
    this.el.setupPanel.hidden = false;
    this.el.gamePanel.hidden = true;
  }

  private async start(): Promise<void> {
    const n = Number(this.el.size.value);
    if (!Number.isInteger(n) || n < 1) {
      this.el.setupError.textContent = "n must be a positive integer";
      return;
    }
    this.el.setupError.textContent = "";
    const mode = this.el.mode.value as "machine_asks" | "human_asks";
    let responder: ResponderSpec | undefined;
    if (mode === "human_asks") {
      responder = { mode: this.el.responderMode.value as "honest" | "adversary" };
      if (responder.mode === "honest") {
        if (this.el.secret.value) responder.x = Number(this.el.secret.value);
        if (this.el.lieAt.value) responder.lie_at = Number(this.el.lieAt.value);
      }
    }
    await this.guarded(async () => {
      const created = await this.client.createSession(mode, n, responder);
      const full = await this.client.getSession(created.id);
      this.render(buildViewModel(full));
      this.el.setupPanel.hidden = true;
      this.el.gamePanel.hidden = false;
    });
  }

  private async answer(value: "yes" | "no"): Promise<void> {
    if (!this.vm) return;
    const id = this.vm.sessionId;
    await this.guarded(async () => {
      await this.client.postAnswer(id, value);
      this.render(buildViewModel(await this.client.getSession(id)));
    });
  }

  private async ask(): Promise<void> {
    if (!this.vm) return;
    const id = this.vm.sessionId;
    let shape: QuestionShape;
    const kind = this.el.builderKind.value;
    try {
      if (kind === "ids") {
        const ids = this.el.builderIds.value
          .split(/[\s,]+/)
          .filter((part) => part.length > 0)
          .map((part) => {
            const v = Number(part);
            if (!Number.isInteger(v)) throw new Error(`not an id: ${part}`);
            return v;
          });
        shape = { ids };
      } else if (kind === "range") {
        shape = { range: [Number(this.el.builderLo.value), Number(this.el.builderHi.value)] };
      } else {
        shape = { bit: Number(this.el.builderBit.value) };
      }
    } catch (err) {
      this.el.gameError.textContent = String(err instanceof Error ? err.message : err);
      return;
    }
    await this.guarded(async () => {
      const res = await this.client.postQuestion(id, shape);
      this.el.machineAnswer.textContent = `Machine answers: ${res.answer}`;
      this.render(buildViewModel(await this.client.getSession(id)));
    });
  }

  private exportTranscript(): void {
    if (!this.vm) return;
    this.download(`liargame-${this.vm.sessionId}.log`, this.vm.transcriptText);
  }

  private async guarded(work: () => Promise<void>): Promise<void> {
    if (this.inFlight) return;
    this.inFlight = true;
    this.setInputsEnabled(false);
    try {
      await work();
      this.el.gameError.textContent = "";
    } catch (err) {
      if (err instanceof ApiError && err.code === "conflict") {
        this.el.gameError.textContent = "Another request is in flight; try again.";
      } else {
        this.el.gameError.textContent = String(err instanceof Error ? err.message : err);
      }
    } finally {
      this.inFlight = false;
      this.setInputsEnabled(true);
    }
  }

  private setInputsEnabled(enabled: boolean): void {
    for (const b of [this.el.yesButton, this.el.noButton, this.el.askButton, this.el.startButton]) {
      b.disabled = !enabled;
    }
  }

  render(vm: ViewModel): void {
    this.vm = vm;
    const el = this.el;
    el.banner.textContent = vm.banner;
    el.banner.hidden = vm.banner === "";
    el.statA.textContent = String(vm.a);
    el.statB.textContent = String(vm.b);
    el.statWeight.textContent = String(vm.weight);
    el.statRemaining.textContent = String(vm.questionsRemaining);
    el.statAsked.textContent = `${vm.questionsAsked} / ${vm.budget}`;
    el.meterFill.style.width = `${(vm.meter.fraction * 100).toFixed(2)}%`;
    el.meterLabel.textContent = `weight ${vm.meter.weight} vs budget ${vm.meter.budgetLine}`;
    el.questionHeading.textContent = vm.questionHeading;
    el.questionText.textContent = vm.questionText;
    el.questionTag.textContent = vm.questionTag;
    el.lieHint.textContent = vm.lieHint;
    el.answerButtons.hidden = !(vm.mode === "machine_asks" && vm.hasQuestion);
    el.builder.hidden = !(vm.mode === "human_asks" && !vm.terminal);
    el.transcriptBody.replaceChildren(
      ...vm.transcriptRows.map((row) => {
        const tr = document.createElement("tr");
        for (const cell of [row.question, row.answer, row.a, row.b, row.j, row.tag]) {
          const td = document.createElement("td");
          td.textContent = cell;
          tr.appendChild(td);
        }
        return tr;
      }),
    );
  }
}
