// Wire protocol of the session service: JSON command endpoints plus a
// server-sent event stream. Schemas are validated at the boundary so the
// rest of the UI can trust its inputs.

import { z } from "zod";

export const archivePointSchema = z.object({
  selection: z.string().regex(/^[01]*$/),
  objectives: z.array(z.number().int()),
  cone: z.boolean(),
});

export const boundsPayloadSchema = z.object({
  lower: z.array(
    z.object({
      selection: z.string(),
      objectives: z.array(z.number().int()),
    }),
  ),
  upper: z.array(
    z.object({
      weights: z.array(z.number()),
      value: z.number(),
      point: z.array(z.number()),
    }),
  ),
  archive: z.array(archivePointSchema),
});

export const snapshotPayloadSchema = z.object({
  generation: z.number().int(),
  points: z.array(archivePointSchema),
});

export const refchangePayloadSchema = z.object({
  r: z.array(z.number().int()),
  active: z.boolean(),
  origin: z.string().optional(),
  boundary: z.number().int().optional(),
});

export const statePayloadSchema = z.object({
  state: z.enum(["idle", "searching", "paused", "done"]),
  boundary: z.number().int().optional(),
  reason: z.string().optional(),
});

export const acceptedPayloadSchema = z.object({
  selection: z.string(),
  objectives: z.array(z.number().int()),
});

export const sessionEventSchema = z.discriminatedUnion("type", [
  z.object({
    type: z.literal("bounds"),
    evaluations: z.number().int(),
    payload: boundsPayloadSchema,
  }),
  z.object({
    type: z.literal("snapshot"),
    evaluations: z.number().int(),
    payload: snapshotPayloadSchema,
  }),
  z.object({
    type: z.literal("refchange"),
    evaluations: z.number().int(),
    payload: refchangePayloadSchema,
  }),
  z.object({
    type: z.literal("state"),
    evaluations: z.number().int(),
    payload: statePayloadSchema,
  }),
  z.object({
    type: z.literal("accepted"),
    evaluations: z.number().int(),
    payload: acceptedPayloadSchema,
  }),
]);

export type ArchivePoint = z.infer<typeof archivePointSchema>;
export type BoundsPayload = z.infer<typeof boundsPayloadSchema>;
export type SnapshotPayload = z.infer<typeof snapshotPayloadSchema>;
export type SessionEvent = z.infer<typeof sessionEventSchema>;
export type SessionState = z.infer<typeof statePayloadSchema>["state"];

export function parseEventLine(data: string): SessionEvent {
  return sessionEventSchema.parse(JSON.parse(data));
}
