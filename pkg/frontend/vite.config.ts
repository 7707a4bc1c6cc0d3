import { defineConfig } from "vitest/config";

export default defineConfig({
  // relative asset URLs so the bundle works from any static mount point
  base: "./",
  test: {
    environment: "node",
    include: ["test/**/*.test.ts"],
  },
});
