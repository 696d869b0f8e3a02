/** Wire types shared with the sync server's JSON API. */

export interface WireChoice {
  text: string;
  correct: boolean;
}

export interface WireQuestion {
  token: string;
  stem: string;
  choices: WireChoice[];
  explanation: string;
  imageUrl?: string | null;
}

export interface GradePolicy {
  baseWindow: number;
  growthThreshold: number;
  growthDivisor: number;
  maxWindow: number;
  scale: number;
  lastAnswerWeight: number;
}

export interface TimeoutPolicy {
  enabled: boolean;
  tMin: number;
  tMax: number;
  gMin: number;
  width: number;
}

export interface AllocationPayload {
  lectureId: string;
  questions: WireQuestion[];
  gradePolicy: GradePolicy;
  timeoutPolicy: TimeoutPolicy;
  grade: number;
  answered: number;
}

export interface AnswerRecord {
  token: string;
  clientSeq: number;
  chosenIndex: number | null;
  timeTaken: number;
  timedOut: boolean;
  clientTimestamp: number;
}

export interface AckStatus {
  status: "accepted" | "duplicate" | "rejected";
  reason?: string;
}

export interface Ack {
  statuses: AckStatus[];
  grade: number;
  answered: number;
}

export interface CatalogLecture {
  id: string;
  title: string;
  questionCount: number;
}

export interface Catalog {
  courses: {
    id: string;
    title: string;
    tutorials: { id: string; title: string; lectures: CatalogLecture[] }[];
  }[];
}

/** One answered question as the local grade computation sees it. */
export interface LocalOutcome {
  correct: boolean;
  timedOut: boolean;
  timeTaken: number;
}
