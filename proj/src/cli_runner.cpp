namespace rmt {}  // placeholder
