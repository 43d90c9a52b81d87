import type { JobSnapshot } from "./types.js";

const INITIAL_INTERVAL_MS = 1000;
const MAX_INTERVAL_MS = 5000;

export interface PollOptions {
  getJob: (jobId: string) => Promise<JobSnapshot>;
  onUpdate?: (snapshot: JobSnapshot) => void;
  sleep?: (ms: number) => Promise<void>;
  initialMs?: number;
  maxMs?: number;
}

const defaultSleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

/** Poll a job until done or failed, starting at 1s and backing off to 5s. */
export async function pollUntilTerminal(jobId: string, options: PollOptions): Promise<JobSnapshot> {
  const sleep = options.sleep ?? defaultSleep;
  const initial = options.initialMs ?? INITIAL_INTERVAL_MS;
  const max = options.maxMs ?? MAX_INTERVAL_MS;
  let interval = initial;
  for (;;) {
    const snapshot = await options.getJob(jobId);
    options.onUpdate?.(snapshot);
    if (snapshot.state === "done" || snapshot.state === "failed") return snapshot;
    await sleep(interval);
    interval = Math.min(max, interval * 1.5);
  }
}
