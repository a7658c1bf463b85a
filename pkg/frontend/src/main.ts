import { ApiClient } from "./api";
import { createApp } from "./app";

const root = document.getElementById("app");
if (root !== null) {
  createApp(root, new ApiClient());
}
