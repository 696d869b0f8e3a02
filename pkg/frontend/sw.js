/* Service worker: cache the app shell so the drill loads with no network.
   Static assets are served cache-first; API calls always go to the network
   (the lecture cache in localStorage covers offline drilling). */

const CACHE = "drillkit-shell-v1";
const SHELL = ["./", "index.html", "styles.css", "dist/main.js"];

self.addEventListener("install", (event) => {
  event.waitUntil(caches.open(CACHE).then((cache) => cache.addAll(SHELL)));
});

self.addEventListener("activate", (event) => {
  event.waitUntil(
    caches
      .keys()
      .then((keys) => Promise.all(keys.filter((k) => k !== CACHE).map((k) => caches.delete(k))))
  );
});

self.addEventListener("fetch", (event) => {
  const url = new URL(event.request.url);
  if (url.origin !== self.location.origin || url.pathname.includes("/api/")) {
    return; // network-only for the API and third parties
  }
  event.respondWith(
    caches.match(event.request).then((hit) => hit || fetch(event.request))
  );
});
