/** The inverse-dome answer time limit, mirrored from the server. */

import type { TimeoutPolicy } from "./types.js";

/** Seconds allowed at the given grade; Infinity when the policy is off. */
export function timeoutSeconds(grade: number, policy: TimeoutPolicy): number {
  if (!policy.enabled) return Infinity;
  const dip = Math.exp(-((grade - policy.gMin) ** 2) / (2 * policy.width ** 2));
  return policy.tMax - (policy.tMax - policy.tMin) * dip;
}
