/** Wire types for the latloc HTTP JSON API. */
export {};
