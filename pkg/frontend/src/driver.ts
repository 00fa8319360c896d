/**
 * Polling loop between the service and the view. One snapshot poll at a
 * time, at most one in-flight interaction submission; every new view model
 * is pushed to the render callback.
 */
import type { SessionClient } from "./api.js";
import type { InteractionRequest } from "./schema.js";
import { fromSnapshot, type ViewModel } from "./viewmodel.js";

export class SessionDriver {
  private polling = false;
  private submitting = false;
  private qualityCurve: number[] = [];

  constructor(
    private readonly client: SessionClient,
    private readonly sessionId: string,
    private readonly onView: (vm: ViewModel, curve: number[]) => void,
  ) {}

  /** Best-quality history observed over this driver's lifetime. */
  get curve(): number[] {
    return [...this.qualityCurve];
  }

  private push(vm: ViewModel): void {
    if (vm.kind === "view" && vm.bestQuality !== null) {
      this.qualityCurve.push(vm.bestQuality);
    }
    this.onView(vm, this.curve);
  }

  /** Poll once; overlapping calls collapse into the running one. */
  async poll(): Promise<void> {
    if (this.polling) return;
    this.polling = true;
    try {
      this.push(fromSnapshot(await this.client.snapshot(this.sessionId)));
    } catch (err) {
      this.push({ kind: "error", message: String(err) });
    } finally {
      this.polling = false;
    }
  }

  /** Kick the colony to its next interaction point. */
  async advance(): Promise<void> {
    this.push(fromSnapshot(await this.client.advance(this.sessionId)));
  }

  /**
   * Submit an interaction. Returns false without touching the wire when a
   * submission is already in flight.
   */
  async submit(request: InteractionRequest): Promise<boolean> {
    if (this.submitting) return false;
    this.submitting = true;
    try {
      this.push(fromSnapshot(await this.client.submit(this.sessionId, request)));
      return true;
    } catch (err) {
      this.push({ kind: "error", message: String(err) });
      return true;
    } finally {
      this.submitting = false;
    }
  }
}
