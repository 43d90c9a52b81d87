import { createApiClient } from "./api.js";
import { mountCommitPage } from "./commit_page.js";
import { mountModulePage } from "./module_page.js";

const api = createApiClient();

const modulePage = document.getElementById("module-page");
if (modulePage) mountModulePage(modulePage, { api });

const commitPage = document.getElementById("commit-page");
if (commitPage) mountCommitPage(commitPage, api);
