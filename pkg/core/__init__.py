# Core model package
