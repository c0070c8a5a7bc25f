/** Study runner: wires calibration, practice countdown, the live keyboard,
 * and the protocol transport into one page flow.
 *
 * Flow: instructions → card calibration → practice session behind a
 * countdown → formal phrases (blocks × phrases for the chosen variant) →
 * log download.  Committed words are immutable; all decoding happens
 * server-side.
 */

import { Calibration, CARD_WIDTH_MM } from './calibration.js';
import { KeyboardView } from './keyboard-view.js';
import type { ServerMessage, Variant } from './protocol.js';
import { PracticeGate, StudyState } from './state.js';
import { SessionClient } from './transport.js';

interface AppOptions {
  baseUrl: string;
  variant: Variant;
  participant: string;
  blocks: number;
  phrasesPerBlock: number;
}

export class StudyApp {
  private readonly client: SessionClient;
  private readonly calibration = new Calibration();
  private state: StudyState | null = null;
  private keyboard: KeyboardView | null = null;
  private gate: PracticeGate | null = null;
  private practicing = true;

  private readonly els = {
    stage: document.getElementById('stage')!,
    status: document.getElementById('status')!,
    target: document.getElementById('target')!,
    transcript: document.getElementById('transcript')!,
    candidates: document.getElementById('candidates')!,
    controls: document.getElementById('controls')!,
  };

  constructor(private readonly options: AppOptions) {
    this.client = new SessionClient(options.baseUrl);
  }

  run(): void {
    this.renderCalibration();
  }

  // -- calibration gate ---------------------------------------------------

  private renderCalibration(): void {
    const stage = this.els.stage;
    stage.innerHTML = '';
    this.els.status.textContent =
      'Drag the slider until the box is exactly as wide as a bank card, then press Start.';

    const box = document.createElement('div');
    box.className = 'calibration-box';
    box.style.height = '54px';
    const slider = document.createElement('input');
    slider.type = 'range';
    slider.min = '150';
    slider.max = '1200';
    slider.value = '320';
    const apply = (): void => {
      box.style.width = `${slider.value}px`;
    };
    slider.addEventListener('input', apply);
    apply();

    const start = document.createElement('button');
    start.textContent = 'Start';
    start.addEventListener('click', () => {
      if (!this.calibration.confirmCardWidth(Number(slider.value))) {
        this.els.status.textContent =
          `That width is not plausible for a ${CARD_WIDTH_MM} mm card — adjust and retry.`;
        return;
      }
      void this.startSession();
    });

    stage.append(box, slider, start);
  }

  // -- session ------------------------------------------------------------

  private async startSession(): Promise<void> {
    const started = await this.client.start({
      type: 'session-start',
      variant: this.options.variant,
      participant: this.options.participant,
      blocks: this.options.blocks,
      phrases_per_block: this.options.phrasesPerBlock,
    });
    this.state = new StudyState(started);
    this.gate = new PracticeGate(started.practice_duration_s * 1000);
    this.gate.start(performance.now());
    this.practicing = true;
    this.renderSession();
    this.tickCountdown();
  }

  private renderSession(): void {
    const state = this.state!;
    const stage = this.els.stage;
    stage.innerHTML = '';

    this.keyboard = new KeyboardView(
      state.geometry,
      this.calibration,
      state.variant,
      (sample) => void this.onPointerSample(sample),
    );
    stage.appendChild(this.keyboard.root);

    this.els.controls.innerHTML = '';
    const del = document.createElement('button');
    del.textContent = 'delete';
    del.addEventListener('click', () => void this.sendAndApply({
      type: 'delete', t: performance.now(),
    }));
    const next = document.createElement('button');
    next.id = 'next-phrase';
    next.textContent = 'next phrase';
    next.addEventListener('click', () => void this.onAdvance());
    this.els.controls.append(del, next);

    this.refresh();
  }

  private tickCountdown(): void {
    if (!this.practicing || !this.gate) {
      return;
    }
    const remaining = this.gate.remainingMs(performance.now());
    if (remaining > 0) {
      this.els.status.textContent =
        `Practice: formal task unlocks in ${Math.ceil(remaining / 1000)} s`;
      setTimeout(() => this.tickCountdown(), 250);
    } else {
      this.practicing = false;
      this.els.status.textContent = 'Formal task — type the phrase shown above.';
      this.refresh();
    }
  }

  private async onPointerSample(sample: {
    kind: 'down' | 'move' | 'up'; x: number; y: number; t: number;
  }): Promise<void> {
    await this.sendAndApply({ type: 'pointer-event', ...sample });
  }

  private async onAdvance(): Promise<void> {
    if (this.practicing && this.gate && !this.gate.unlocked(performance.now())) {
      return; // formal task still locked behind the countdown
    }
    await this.sendAndApply({ type: 'phrase-advance', t: performance.now() });
    if (this.state!.complete) {
      await this.downloadLog();
    }
  }

  private async sendAndApply(msg: Parameters<SessionClient['send']>[0]): Promise<void> {
    let messages: ServerMessage[];
    try {
      messages = await this.client.send(msg);
    } catch {
      this.els.status.textContent =
        `Connection hiccup — ${this.client.bufferedCount} event(s) buffered, retrying…`;
      return;
    }
    this.state!.applyAll(messages);
    this.refresh();
  }

  private refresh(): void {
    const state = this.state!;
    this.els.target.textContent =
      `Block ${state.phrase.block} · phrase ${state.phrase.phrase_index + 1}` +
      `/${state.phrase.phrase_count}: ${state.phrase.target}`;
    this.els.transcript.textContent = state.transcript + state.code.map(String).join('');
    this.keyboard?.setKey1Label(state.key1Label);

    const bar = this.els.candidates;
    bar.innerHTML = '';
    for (const word of state.candidates) {
      const btn = document.createElement('button');
      btn.className = 'candidate';
      btn.textContent = word;
      btn.addEventListener('click', () => void this.sendAndApply({
        type: 'commit', word, t: performance.now(),
      }));
      bar.appendChild(btn);
    }
  }

  private async downloadLog(): Promise<void> {
    const handle = this.state!.logHandle!;
    const text = await this.client.fetchLog(handle);
    const blob = new Blob([text], { type: 'application/jsonl' });
    const a = document.createElement('a');
    a.href = URL.createObjectURL(blob);
    a.download = `${handle}.t9log`;
    a.click();
    URL.revokeObjectURL(a.href);
    this.els.status.textContent = 'Session complete — log downloaded. Thank you!';
    this.els.stage.innerHTML = '';
    this.els.controls.innerHTML = '';
  }
}
