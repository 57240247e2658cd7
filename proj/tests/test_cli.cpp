// placeholder, populated with the matching module
